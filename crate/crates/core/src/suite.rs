//! Desk-scale benchmark suite: five separable test functions with
//! deterministic instances, and a pure random-search baseline that produces
//! run traces end-to-end.
//!
//! Instances translate the optimum and offset the optimal value so that
//! artificial properties (like an optimum at zero) cannot be exploited.
//! These are lightweight approximations of the classic separable group, not
//! replicas of any external suite.

use std::fmt;
use std::str::FromStr;

use rand::Rng as _;

use crate::error::{Error, Result};
use crate::model::{ProblemTriple, RunTrace, Step};
use crate::runtime::{derive_seed, rng_from_seed, Rng};

pub const SUITE_NAME: &str = "mini";
pub const RANDOM_SEARCH: &str = "random-search";

/// Search domain is [-5, 5]^n for every function.
pub const DOMAIN_HALF_WIDTH: f64 = 5.0;

/// Instance parameters are derived from this fixed constant, so a problem
/// triple always denotes the same landscape.
const INSTANCE_SEED: u64 = 0x52554e46414c4c31;

/// The five members of the separable mini suite, in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SuiteFunction {
    Sphere,
    Ellipsoid,
    Rastrigin,
    Bueche,
    LinearSlope,
}

impl SuiteFunction {
    pub const ALL: [SuiteFunction; 5] = [
        SuiteFunction::Sphere,
        SuiteFunction::Ellipsoid,
        SuiteFunction::Rastrigin,
        SuiteFunction::Bueche,
        SuiteFunction::LinearSlope,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteFunction::Sphere => "sphere",
            SuiteFunction::Ellipsoid => "ellipsoid",
            SuiteFunction::Rastrigin => "rastrigin",
            SuiteFunction::Bueche => "bueche",
            SuiteFunction::LinearSlope => "linear-slope",
        }
    }
}

impl fmt::Display for SuiteFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteFunction::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown suite function `{s}`")))
    }
}

/// One instantiated problem: optimum location, optimal value, and identity.
///
/// For `linear-slope` the optimum sits on the domain boundary; `x_opt`
/// stores that corner (5 * sign vector) and the per-coordinate slope signs
/// are recovered from it.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemInstance {
    function: SuiteFunction,
    dimension: u32,
    instance_id: u32,
    x_opt: Vec<f64>,
    f_opt: f64,
}

impl ProblemInstance {
    pub fn function(&self) -> SuiteFunction {
        self.function
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn instance_id(&self) -> u32 {
        self.instance_id
    }

    pub fn x_opt(&self) -> &[f64] {
        &self.x_opt
    }

    pub fn f_opt(&self) -> f64 {
        self.f_opt
    }

    pub fn triple(&self) -> ProblemTriple {
        ProblemTriple::new(self.function.name(), self.dimension, self.instance_id)
            .expect("suite names are valid identifiers")
    }
}

/// Deterministically instantiates a function: identical inputs always yield
/// the bit-identical instance. The optimum is drawn uniformly from the
/// interior [-4, 4]^n and the optimal value uniformly from [-100, 100],
/// snapped to a cent.
pub fn instantiate(
    function: SuiteFunction,
    dimension: u32,
    instance_id: u32,
) -> Result<ProblemInstance> {
    if dimension == 0 {
        return Err(Error::invalid("dimension must be at least 1"));
    }
    let label = format!("instance/{}/d{}", function.name(), dimension);
    let mut rng = rng_from_seed(derive_seed(INSTANCE_SEED, &label, u64::from(instance_id)));
    let n = dimension as usize;
    let x_opt: Vec<f64> = match function {
        SuiteFunction::LinearSlope => (0..n)
            .map(|_| {
                if rng.random_range(0..2u32) == 0 {
                    -5.0
                } else {
                    5.0
                }
            })
            .collect(),
        _ => (0..n).map(|_| rng.random_range(-4.0..4.0)).collect(),
    };
    // Snapped to a cent: drawn as integer hundredths.
    let f_opt = rng.random_range(-10_000i32..=10_000) as f64 / 100.0;
    Ok(ProblemInstance {
        function,
        dimension,
        instance_id,
        x_opt,
        f_opt,
    })
}

/// Evaluates the instance at a point. The global minimum over the domain is
/// `f_opt`, attained at `x_opt`.
pub fn evaluate(instance: &ProblemInstance, x: &[f64]) -> Result<f64> {
    let n = instance.dimension as usize;
    if x.len() != n {
        return Err(Error::invalid(format!(
            "point has dimension {}, instance expects {n}",
            x.len()
        )));
    }
    let value = match instance.function {
        SuiteFunction::Sphere => {
            let s: f64 = x
                .iter()
                .zip(&instance.x_opt)
                .map(|(xi, oi)| (xi - oi) * (xi - oi))
                .sum();
            instance.f_opt + s
        }
        SuiteFunction::Ellipsoid => {
            let s: f64 = x
                .iter()
                .zip(&instance.x_opt)
                .enumerate()
                .map(|(i, (xi, oi))| {
                    let z = xi - oi;
                    let factor = if n == 1 {
                        1.0
                    } else {
                        10f64.powf(6.0 * i as f64 / (n as f64 - 1.0))
                    };
                    factor * z * z
                })
                .sum();
            instance.f_opt + s
        }
        SuiteFunction::Rastrigin => {
            let z: Vec<f64> = x
                .iter()
                .zip(&instance.x_opt)
                .map(|(xi, oi)| xi - oi)
                .collect();
            rastrigin_core(&z) + instance.f_opt
        }
        SuiteFunction::Bueche => {
            // Odd coordinates (1-based) are stretched tenfold on the
            // positive side, breaking the symmetry of plain Rastrigin.
            let y: Vec<f64> = x
                .iter()
                .zip(&instance.x_opt)
                .enumerate()
                .map(|(i, (xi, oi))| {
                    let z = xi - oi;
                    if i % 2 == 0 && z > 0.0 {
                        10.0 * z
                    } else {
                        z
                    }
                })
                .collect();
            rastrigin_core(&y) + instance.f_opt
        }
        SuiteFunction::LinearSlope => {
            // Optimum at the corner 5 * s; within the domain every term
            // 5|s_i| - s_i x_i is non-negative.
            let s: f64 = x
                .iter()
                .zip(&instance.x_opt)
                .map(|(xi, corner)| {
                    let sign = corner.signum();
                    DOMAIN_HALF_WIDTH * sign.abs() - sign * xi
                })
                .sum();
            instance.f_opt + s
        }
    };
    Ok(value)
}

fn rastrigin_core(z: &[f64]) -> f64 {
    let n = z.len() as f64;
    let cos_sum: f64 = z
        .iter()
        .map(|zi| (2.0 * std::f64::consts::PI * zi).cos())
        .sum();
    let sq_sum: f64 = z.iter().map(|zi| zi * zi).sum();
    10.0 * (n - cos_sum) + sq_sum
}

/// Pure random search: `budget` points drawn uniformly from the domain.
/// The trace records the strict best-so-far improvements, with the
/// instance's optimal value as reference.
pub fn random_search(instance: &ProblemInstance, budget: u64, rng: &mut Rng) -> Result<RunTrace> {
    if budget == 0 {
        return Err(Error::invalid("budget must be at least 1"));
    }
    let n = instance.dimension as usize;
    let mut steps: Vec<Step> = Vec::new();
    let mut best = f64::INFINITY;
    let mut point = vec![0.0; n];
    for evals in 1..=budget {
        for coord in point.iter_mut() {
            *coord = rng.random_range(-DOMAIN_HALF_WIDTH..DOMAIN_HALF_WIDTH);
        }
        let value = evaluate(instance, &point)?;
        if value < best {
            best = value;
            steps.push(Step { evals, value });
        }
    }
    RunTrace::new(
        instance.triple(),
        RANDOM_SEARCH,
        SUITE_NAME,
        instance.f_opt,
        steps,
        budget,
    )
}
