//! The acceptance suite: ten exact checks, each printed as one pass/fail line.
//!
//! Every criterion draws from its own ChaCha stream seeded from the suite
//! seed and its number, so runs are reproducible and independent of order.

mod checks;
pub mod sample;

use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub const DEFAULT_SEED: u64 = 0x5eed_f00d;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    Kernel,
    Surfaces,
    Threefolds,
    Paper,
}

impl Tier {
    pub const ALL: [Tier; 4] = [Tier::Kernel, Tier::Surfaces, Tier::Threefolds, Tier::Paper];

    pub fn name(self) -> &'static str {
        match self {
            Tier::Kernel => "kernel",
            Tier::Surfaces => "surfaces",
            Tier::Threefolds => "threefolds",
            Tier::Paper => "paper",
        }
    }
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown tier `{0}` (expected kernel, surfaces, threefolds or paper)")]
pub struct UnknownTier(pub String);

impl FromStr for Tier {
    type Err = UnknownTier;
    fn from_str(s: &str) -> Result<Tier, UnknownTier> {
        Tier::ALL.into_iter().find(|t| t.name() == s).ok_or_else(|| UnknownTier(s.to_string()))
    }
}

/// `Ok` carries a short summary, `Err` the diagnostics of the first mismatch.
pub type Check = Result<String, String>;

pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    pub tier: Tier,
    pub budget: Duration,
    run: fn(&mut ChaCha8Rng) -> Check,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub id: u8,
    pub title: String,
    pub tier: Tier,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
    pub budget_ms: u128,
}

/// Timing is left out so repeated runs print identical lines.
impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {:>2} {}: {}", self.id, self.title, self.detail)
    }
}

pub fn criteria() -> Vec<Criterion> {
    let c = |id, title, tier, secs, run| Criterion { id, title, tier, budget: Duration::from_secs(secs), run };
    vec![
        c(1, "surface golden bodies", Tier::Surfaces, 3, checks::surface_bodies),
        c(2, "surface Zariski oracle", Tier::Surfaces, 5, checks::surface_zariski),
        c(3, "blow-up of the plane in 7+6+6 points", Tier::Surfaces, 10, checks::p2blow7),
        c(4, "volume formulas", Tier::Threefolds, 30, checks::volumes),
        c(5, "Fujita-Zariski nefness", Tier::Threefolds, 60, checks::nefness),
        c(6, "3D bodies", Tier::Paper, 30, checks::bodies),
        c(7, "slice bridge", Tier::Threefolds, 60, checks::slice_bridge),
        c(8, "4D glues", Tier::Paper, 30, checks::glues),
        c(9, "curve Seshadri constants and area bound", Tier::Paper, 10, checks::seshadri),
        c(10, "kernel property suite", Tier::Kernel, 60, checks::kernel),
    ]
}

fn seed_for(seed: u64, id: u8) -> u64 {
    seed ^ (u64::from(id)).wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

/// Runs one criterion; a panic counts as a failure. Exceeding the time
/// budget fails the criterion too.
pub fn run_criterion(c: &Criterion, seed: u64) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed_for(seed, c.id));
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(|| (c.run)(&mut rng))).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "unknown panic".into());
        Err(format!("panicked: {msg}"))
    });
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if passed && elapsed > c.budget {
        passed = false;
        detail = format!("over the {} s budget; {detail}", c.budget.as_secs());
    }
    Report {
        id: c.id,
        title: c.title.to_string(),
        tier: c.tier,
        passed,
        detail,
        elapsed_ms: elapsed.as_millis(),
        budget_ms: c.budget.as_millis(),
    }
}

/// Runs the criteria of `tier` (all when `None`) in order.
pub fn run(tier: Option<Tier>, seed: u64) -> Vec<Report> {
    criteria()
        .iter()
        .filter(|c| tier.is_none_or(|t| t == c.tier))
        .map(|c| run_criterion(c, seed))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiers_parse_and_partition() {
        assert_eq!("paper".parse::<Tier>(), Ok(Tier::Paper));
        assert!("bogus".parse::<Tier>().is_err());
        let all = criteria();
        assert_eq!(all.iter().map(|c| c.id).collect::<Vec<_>>(), (1..=10).collect::<Vec<_>>());
        for t in Tier::ALL {
            assert!(all.iter().any(|c| c.tier == t), "{t} is empty");
        }
    }

    #[test]
    fn surface_tier_runs_alone() {
        let r = run(Some(Tier::Surfaces), 7);
        assert_eq!(r.iter().map(|r| r.id).collect::<Vec<_>>(), vec![1, 2, 3]);
        assert!(r.iter().all(|r| r.passed), "{r:?}");
        assert!(r[0].to_string().starts_with("[PASS]  1 "));
    }
}
