//! Cross-path consistency checks over every stable `(g, n)` up to a complexity bound.

use num_traits::Signed;
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{EvenPolynomial, Rational};
use crate::error::{Error, Result};
use crate::methods::Registry;
use crate::volumes::{stable_keys, VolumeKey};

/// Largest `2g - 2 + n` at which cell integration is attempted.
pub const BRUTE_MAX_COMPLEXITY: i64 = 2;

/// Number of random perimeter points per brute-force check.
pub const BRUTE_POINTS: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub g: u32,
    pub n: usize,
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub max_complexity: u32,
    pub seed: u64,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// `n` positive rationals with no vanishing signed subset sum, so the point
/// avoids every wall between cells.
pub fn generic_point(rng: &mut StdRng, n: usize) -> Vec<Rational> {
    loop {
        let point: Vec<Rational> = (0..n)
            .map(|_| Rational::new(rng.random_range(1i64..=40).into(), rng.random_range(1i64..=7).into()))
            .collect();
        if is_generic(&point) {
            return point;
        }
    }
}

fn is_generic(point: &[Rational]) -> bool {
    let n = point.len();
    let mut signs = vec![0i8; n];
    loop {
        let mut i = 0;
        while i < n && signs[i] == 1 {
            signs[i] = -1;
            i += 1;
        }
        if i == n {
            return true;
        }
        signs[i] += 1;
        if signs.iter().all(|&s| s == 0) {
            continue;
        }
        let sum = point.iter().zip(&signs).fold(Rational::from_integer(0.into()), |acc, (x, &s)| match s {
            1 => acc + x,
            -1 => acc - x,
            _ => acc,
        });
        if sum == Rational::from_integer(0.into()) {
            return false;
        }
    }
}

fn outcome(key: VolumeKey, check: &str, result: Result<std::result::Result<String, String>>) -> CheckOutcome {
    let (passed, detail) = match result {
        Ok(Ok(d)) => (true, d),
        Ok(Err(d)) => (false, d),
        Err(e) => (false, e.to_string()),
    };
    CheckOutcome { g: key.g, n: key.n, check: check.to_string(), passed, detail }
}

fn agree<T: PartialEq>(a: &T, b: &T, what: &str) -> std::result::Result<String, String> {
    if a == b {
        Ok(what.to_string())
    } else {
        Err(format!("{what} differ"))
    }
}

fn structural(p: &EvenPolynomial, key: VolumeKey) -> [(&'static str, std::result::Result<String, String>); 3] {
    let symmetry = if p.is_symmetric() { Ok("invariant under slot permutations".into()) } else { Err("not symmetric".into()) };
    let expected = key.degree();
    let homogeneity = match p.homogeneous_weight() {
        Some(w) if w as i64 == expected => Ok(format!("degree {expected} in L^2")),
        other => Err(format!("expected degree {expected}, got {other:?}")),
    };
    let negative = p.terms().filter(|(_, c)| !c.is_positive()).count();
    let positivity =
        if negative == 0 { Ok(format!("{} positive terms", p.len())) } else { Err(format!("{negative} non-positive terms")) };
    [("symmetry", symmetry), ("homogeneity", homogeneity), ("positivity", positivity)]
}

fn check_key(registry: &Registry, key: VolumeKey, points: &[Vec<Rational>]) -> Result<Vec<CheckOutcome>> {
    let (g, n) = (key.g, key.n);
    let rec = registry.volume("recursion")?;
    let dvv = registry.volume("dvv")?;
    let laplace = registry.correlator("laplace")?;
    let eo = registry.correlator("eo")?;
    let mut out = Vec::new();
    let poly = rec.polynomial(g, n);
    let paths = match &poly {
        Ok(p) => dvv.polynomial(g, n).map(|q| agree(p, &q, "polynomials")),
        Err(e) => Err(e.clone()),
    };
    out.push(outcome(key, "recursion=dvv", paths));
    out.push(outcome(key, "laplace=eo", (|| Ok(agree(&laplace.correlator(g, n)?, &eo.correlator(g, n)?, "correlators")))()));
    match &poly {
        Ok(p) => {
            for (name, r) in structural(p, key) {
                out.push(outcome(key, name, Ok(r)));
            }
        }
        Err(e) => {
            for name in ["symmetry", "homogeneity", "positivity"] {
                out.push(outcome(key, name, Err(e.clone())));
            }
        }
    }
    if key.complexity() <= BRUTE_MAX_COMPLEXITY {
        let brute = registry.volume("brute")?;
        let result = (|| {
            for point in points {
                let a = rec.evaluate(g, n, point)?;
                let b = brute.evaluate(g, n, point)?;
                if a != b {
                    let shown: Vec<String> = point.iter().map(ToString::to_string).collect();
                    return Ok(Err(format!("at ({}): recursion {a}, cells {b}", shown.join(","))));
                }
            }
            Ok(Ok(format!("{} points", points.len())))
        })();
        out.push(outcome(key, "brute", result));
    }
    Ok(out)
}

/// Runs every check for stable `(g, n)` with `2g - 2 + n <= max_complexity`.
/// Output order is fixed: by complexity, then genus, then check name order.
pub fn verify(registry: &Registry, max_complexity: u32, seed: u64) -> Result<VerifyReport> {
    if max_complexity < 1 {
        return Err(Error::Invalid("complexity bound must be at least 1".into()));
    }
    let keys = stable_keys(max_complexity);
    let mut rng = StdRng::seed_from_u64(seed);
    let jobs: Vec<(VolumeKey, Vec<Vec<Rational>>)> = keys
        .into_iter()
        .map(|k| {
            let points = if k.complexity() <= BRUTE_MAX_COMPLEXITY {
                (0..BRUTE_POINTS).map(|_| generic_point(&mut rng, k.n)).collect()
            } else {
                Vec::new()
            };
            (k, points)
        })
        .collect();
    let results: Vec<Result<Vec<CheckOutcome>>> =
        jobs.par_iter().map(|(k, points)| check_key(registry, *k, points)).collect();
    let mut checks = Vec::new();
    for r in results {
        checks.extend(r?);
    }
    Ok(VerifyReport { max_complexity, seed, checks })
}
