//! Frozen reference constants. Produced by `support::oracle` (RK4, step 2e-3,
//! Richardson over halving) and re-verified by the `oracle_fixture` test.

#[derive(Debug, Clone, Copy)]
pub struct Reference {
    pub n: u32,
    pub gamma: f64,
    pub r_star: f64,
    pub alpha_star: f64,
    pub lambda_flux: f64,
    pub lambda_mass: f64,
}

pub const N3_G2: Reference = Reference {
    n: 3,
    gamma: 2.0,
    r_star: 4.352_874_595_946_1,
    alpha_star: 0.127_248_651_131_15,
    lambda_flux: 30.298_097_756_277,
    lambda_mass: 44.827_055_929_68,
};

pub const N3_G3: Reference = Reference {
    n: 3,
    gamma: 3.0,
    r_star: 6.896_848_619_378_4,
    alpha_star: 0.042_429_757_604_444,
    lambda_flux: 25.361_900_947_070,
    lambda_mass: 25.361_900_947_064,
};
