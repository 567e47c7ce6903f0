//! Globally adaptive 7/15-point Gauss–Kronrod quadrature.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the odd-indexed Kronrod abscissae and the centre.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const MAX_SEGMENTS: usize = 20_000;

/// Integral estimate with its error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quad {
    pub value: f64,
    pub abs_err: f64,
    pub segments: usize,
}

/// Single 15-point Kronrod estimate and `|K15 - G7|`.
fn kronrod15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let sum = f(centre - dx) + f(centre + dx);
        kronrod += WGK[j] * sum;
        if j % 2 == 1 {
            gauss += WG[j / 2] * sum;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Integrates `f` over `[breaks[0], breaks.last()]`, starting from the partition
/// given by `breaks` and bisecting the worst segment until
/// `err <= max(abs_tol, rel_tol·|value|)`.
///
/// Empty or degenerate partitions integrate to zero.
pub fn integrate<F: Fn(f64) -> f64>(f: F, breaks: &[f64], rel_tol: f64, abs_tol: f64) -> Quad {
    let mut heap = BinaryHeap::new();
    let mut value = 0.0;
    let mut err = 0.0;
    for w in breaks.windows(2) {
        if w[1] <= w[0] {
            continue;
        }
        let (v, e) = kronrod15(&f, w[0], w[1]);
        value += v;
        err += e;
        heap.push(Segment {
            a: w[0],
            b: w[1],
            value: v,
            err: e,
        });
    }
    while err > abs_tol.max(rel_tol * value.abs()) && heap.len() < MAX_SEGMENTS {
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // cannot split further in floating point
            heap.push(Segment { err: 0.0, ..worst });
            err -= worst.err;
            continue;
        }
        let (v1, e1) = kronrod15(&f, worst.a, mid);
        let (v2, e2) = kronrod15(&f, mid, worst.b);
        value += v1 + v2 - worst.value;
        err += e1 + e2 - worst.err;
        heap.push(Segment {
            a: worst.a,
            b: mid,
            value: v1,
            err: e1,
        });
        heap.push(Segment {
            a: mid,
            b: worst.b,
            value: v2,
            err: e2,
        });
    }
    // re-sum to shed the running-update rounding
    let segments = heap.len();
    let (value, err) = heap
        .into_iter()
        .fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.err));
    Quad {
        value,
        abs_err: err,
        segments,
    }
}
