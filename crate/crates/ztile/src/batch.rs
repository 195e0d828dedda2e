//! Exhaustive families of small instances and the invariants run over them.

use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use ztile_core::arith::omega;
use ztile_core::products::{
    check_keller_violation, keller_violation_witness, product_set, tower_condition,
    two_factor_condition,
};
use ztile_core::spectra::{construct_spectrum, spectrum_search, verify_spectrum};
use ztile_core::tiler::{decide_tiling_with, search_period};
use ztile_core::tileset::cyclotomic_divisors;
use ztile_core::{IntSet, ProductSpec, TilingOutcome};

use crate::parse::{Family, InputError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    T1T2ImpliesTiling,
    TilingImpliesT1,
    TilingImpliesT2,
    GranvillePeriod,
    SpectrumFormula,
    TwoFactorEquivalence,
    TowerEquivalence,
    KellerWitness,
}

impl Check {
    pub const ALL: [Check; 8] = [
        Check::T1T2ImpliesTiling,
        Check::TilingImpliesT1,
        Check::TilingImpliesT2,
        Check::GranvillePeriod,
        Check::SpectrumFormula,
        Check::TwoFactorEquivalence,
        Check::TowerEquivalence,
        Check::KellerWitness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::T1T2ImpliesTiling => "t1t2-implies-tiling",
            Check::TilingImpliesT1 => "tiling-implies-t1",
            Check::TilingImpliesT2 => "tiling-implies-t2",
            Check::GranvillePeriod => "granville-period",
            Check::SpectrumFormula => "spectrum-formula",
            Check::TwoFactorEquivalence => "two-factor-equivalence",
            Check::TowerEquivalence => "tower-equivalence",
            Check::KellerWitness => "keller-witness",
        }
    }

    /// Whether the check makes sense on the instances of `family`.
    pub fn applies_to(self, family: &Family) -> bool {
        match family {
            Family::Subsets { .. } => matches!(
                self,
                Check::T1T2ImpliesTiling
                    | Check::TilingImpliesT1
                    | Check::TilingImpliesT2
                    | Check::GranvillePeriod
                    | Check::SpectrumFormula
            ),
            Family::TwoFactor { .. } => matches!(
                self,
                Check::TwoFactorEquivalence | Check::TowerEquivalence | Check::KellerWitness
            ),
            Family::ThreeFactor { .. } => {
                matches!(self, Check::TowerEquivalence | Check::KellerWitness)
            }
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = InputError;

    fn from_str(s: &str) -> Result<Self, InputError> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| InputError(format!("unknown check {s:?}")))
    }
}

/// `"all"` or a single check name, validated against the family.
pub fn select_checks(name: &str, family: &Family) -> Result<Vec<Check>, InputError> {
    if name == "all" {
        return Ok(Check::ALL
            .into_iter()
            .filter(|c| c.applies_to(family))
            .collect());
    }
    let check: Check = name.parse()?;
    if !check.applies_to(family) {
        return Err(InputError(format!(
            "check {check} does not apply to the {} family",
            family_kind(family)
        )));
    }
    Ok(vec![check])
}

fn family_kind(family: &Family) -> &'static str {
    match family {
        Family::Subsets { .. } => "subsets",
        Family::TwoFactor { .. } => "two-factor",
        Family::ThreeFactor { .. } => "three-factor",
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Set(IntSet),
    Product(ProductSpec),
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instance::Set(a) => write!(f, "{a}"),
            Instance::Product(s) => write!(f, "{s}"),
        }
    }
}

/// Every instance of the family, in a fixed order.
pub fn enumerate(family: &Family) -> Vec<Instance> {
    match family {
        Family::Subsets { max_elem, max_size } => (2..=*max_size)
            .flat_map(|k| (0..=*max_elem).combinations(k))
            .map(|c| Instance::Set(IntSet::new(c).expect("combinations are distinct")))
            .collect(),
        Family::TwoFactor { max_m, max_n } => {
            let factor: Vec<(u64, u64)> = (1..=*max_m).cartesian_product(2..=*max_n).collect();
            product_specs(&factor, 2)
        }
        Family::ThreeFactor { max_m, ns } => {
            let factor: Vec<(u64, u64)> =
                (1..=*max_m).cartesian_product(ns.iter().copied()).collect();
            product_specs(&factor, 3)
        }
    }
}

fn product_specs(factor: &[(u64, u64)], count: usize) -> Vec<Instance> {
    (0..count)
        .map(|_| factor.iter().copied())
        .multi_cartesian_product()
        .map(|pairs| Instance::Product(ProductSpec::new(pairs).expect("family factors are valid")))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub check: String,
    pub instance: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckSummary {
    pub check: String,
    /// Instances where the hypothesis of the check held and it was tested.
    pub evaluated: usize,
    pub violations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BatchReport {
    pub family: String,
    pub instances: usize,
    /// Products without 0/1 coefficients; no set to test.
    pub skipped: usize,
    pub checks: Vec<CheckSummary>,
    pub violations: Vec<Violation>,
}

impl BatchReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Outcome of one check on one instance.
enum Verdict {
    NotApplicable,
    Pass,
    Fail(String),
}

/// Verdicts for one instance, `None` when it was skipped.
type InstanceResult = Option<Vec<(Check, Verdict)>>;

/// Runs `checks` over the family on the current rayon pool. Results are
/// sorted by instance order and check, so the report does not depend on
/// scheduling.
pub fn run(family: &Family, checks: &[Check], lcap: u64) -> BatchReport {
    let instances = enumerate(family);
    let results: Vec<(usize, InstanceResult)> = instances
        .par_iter()
        .enumerate()
        .map(|(index, inst)| (index, evaluate(inst, checks, lcap)))
        .collect();

    let mut skipped = 0;
    let mut summaries: Vec<CheckSummary> = checks
        .iter()
        .map(|c| CheckSummary {
            check: c.name().to_owned(),
            evaluated: 0,
            violations: 0,
        })
        .collect();
    let mut violations = Vec::new();
    for (index, verdicts) in results {
        let Some(verdicts) = verdicts else {
            skipped += 1;
            continue;
        };
        for (check, verdict) in verdicts {
            let slot = checks
                .iter()
                .position(|&c| c == check)
                .expect("verdicts follow the check list");
            match verdict {
                Verdict::NotApplicable => {}
                Verdict::Pass => summaries[slot].evaluated += 1,
                Verdict::Fail(detail) => {
                    summaries[slot].evaluated += 1;
                    summaries[slot].violations += 1;
                    violations.push((index, check, detail));
                }
            }
        }
    }
    violations.sort_by_key(|(index, check, _)| (*index, *check));

    BatchReport {
        family: family.to_string(),
        instances: instances.len(),
        skipped,
        checks: summaries,
        violations: violations
            .into_iter()
            .map(|(index, check, detail)| Violation {
                check: check.name().to_owned(),
                instance: instances[index].to_string(),
                detail,
            })
            .collect(),
    }
}

/// `None` for products without 0/1 coefficients.
fn evaluate(inst: &Instance, checks: &[Check], lcap: u64) -> InstanceResult {
    let (set, spec) = match inst {
        Instance::Set(a) => (a.clone(), None),
        Instance::Product(s) => (product_set(s)?, Some(s)),
    };
    let facts = Facts::new(&set, lcap);
    let verdicts = checks
        .iter()
        .map(|&check| {
            // a panic inside the library is reported as a violation, not a crash
            let verdict = catch_unwind(AssertUnwindSafe(|| run_check(check, &set, spec, &facts)))
                .unwrap_or_else(|payload| {
                    let msg = payload
                        .downcast_ref::<String>()
                        .cloned()
                        .or_else(|| payload.downcast_ref::<&str>().map(|s| (*s).to_owned()))
                        .unwrap_or_default();
                    Verdict::Fail(format!("panicked: {msg}"))
                });
            (check, verdict)
        })
        .collect();
    Some(verdicts)
}

struct Facts {
    t1: bool,
    t2: bool,
    tiling: TilingOutcome,
}

impl Facts {
    fn new(a: &IntSet, lcap: u64) -> Self {
        let (a0, _) = a.normalized();
        let divs = cyclotomic_divisors(&a0);
        Facts {
            t1: divs.t1_holds(a0.len() as u64),
            t2: divs.t2_holds(&a0.char_poly()),
            tiling: decide_tiling_with(&a0, &divs, Some(lcap)),
        }
    }

    fn tiles(&self) -> Result<bool, String> {
        match &self.tiling {
            TilingOutcome::Tiles(_) => Ok(true),
            TilingOutcome::DoesNotTile => Ok(false),
            TilingOutcome::Undecided { bound } => Err(match bound {
                Some(l) => format!("tiling undecided: period bound {l} exceeds the cap"),
                None => "tiling undecided: period bound overflows".to_owned(),
            }),
        }
    }
}

fn run_check(check: Check, a: &IntSet, spec: Option<&ProductSpec>, f: &Facts) -> Verdict {
    let tiles = match f.tiles() {
        Ok(t) => t,
        Err(detail) => return Verdict::Fail(detail),
    };
    let fail_unless = |ok: bool, detail: String| {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail(detail)
        }
    };
    match check {
        Check::T1T2ImpliesTiling => {
            if !(f.t1 && f.t2) {
                return Verdict::NotApplicable;
            }
            fail_unless(tiles, "T1 and T2 hold but the set does not tile".into())
        }
        Check::TilingImpliesT1 => {
            if !tiles {
                return Verdict::NotApplicable;
            }
            fail_unless(f.t1, "tiles but T1 fails".into())
        }
        Check::TilingImpliesT2 => {
            if !tiles || omega(a.len() as u64) > 2 {
                return Verdict::NotApplicable;
            }
            fail_unless(f.t2, "tiles but T2 fails".into())
        }
        Check::GranvillePeriod => {
            let (a0, _) = a.normalized();
            let n = a0.len() as u64;
            let limit = 2 * a0.max_element() + 2;
            let unrestricted = (n..=limit)
                .step_by(n as usize)
                .find_map(|m| search_period(&a0, m));
            let detail = format!(
                "search over M <= {limit} found {:?}, period-bound search found {}",
                unrestricted.as_ref().map(|c| c.period()),
                tiles
            );
            fail_unless(unrestricted.is_some() == tiles, detail)
        }
        Check::SpectrumFormula => {
            if !(f.t1 && f.t2) {
                return Verdict::NotApplicable;
            }
            let ok = construct_spectrum(a)
                .is_some_and(|s| s.len() + 1 == a.len() && verify_spectrum(a, &s));
            fail_unless(ok, "explicit spectrum missing or invalid".into())
        }
        Check::TwoFactorEquivalence => {
            let spec = spec.expect("two-factor checks run on products");
            let cond = two_factor_condition(spec).expect("two factors");
            let spectral = spectrum_search(a)
                .is_some_and(|s| s.len() + 1 == a.len() && verify_spectrum(a, &s));
            let all = [cond, f.t1 && f.t2, tiles, spectral];
            fail_unless(
                all.iter().all(|&x| x == cond),
                format!(
                    "condition={cond} t1t2={} tiles={tiles} spectrum={spectral}",
                    f.t1 && f.t2
                ),
            )
        }
        Check::TowerEquivalence => {
            let spec = spec.expect("tower checks run on products");
            let tower = tower_condition(spec).is_some();
            let all = [tower, f.t1 && f.t2, tiles];
            fail_unless(
                all.iter().all(|&x| x == tower),
                format!("tower={tower} t1t2={} tiles={tiles}", f.t1 && f.t2),
            )
        }
        Check::KellerWitness => {
            let spec = spec.expect("witness checks run on products");
            if tower_condition(spec).is_some() {
                return Verdict::NotApplicable;
            }
            match keller_violation_witness(spec) {
                Some(w) if check_keller_violation(spec, w.vector()) => Verdict::Pass,
                Some(w) => Verdict::Fail(format!("witness {:?} fails the check", w.vector())),
                None => Verdict::Fail("no witness although no tower exists".into()),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_family;

    #[test]
    fn family_sizes() {
        let count = |s: &str| enumerate(&parse_family(s).unwrap()).len();
        // C(15,2) + ... + C(15,6)
        assert_eq!(count("subsets max_elem=14 max_size=6"), 9933);
        assert_eq!(count("two-factor m<=8 n<=4"), 24 * 24);
        assert_eq!(count("three-factor m<=6 n in {2,3}"), 12 * 12 * 12);
    }

    #[test]
    fn check_selection() {
        let subsets = parse_family("subsets max_elem=4 max_size=3").unwrap();
        assert_eq!(select_checks("all", &subsets).unwrap().len(), 5);
        assert!(select_checks("tower-equivalence", &subsets).is_err());
        assert!(select_checks("no-such-check", &subsets).is_err());
        let three = parse_family("three-factor m<=3 n in {2}").unwrap();
        assert_eq!(
            select_checks("all", &three).unwrap(),
            [Check::TowerEquivalence, Check::KellerWitness]
        );
    }

    #[test]
    fn small_runs_are_clean() {
        for (family, check) in [
            ("subsets max_elem=10 max_size=4", "t1t2-implies-tiling"),
            ("subsets max_elem=8 max_size=4", "all"),
            ("two-factor m<=6 n<=3", "two-factor-equivalence"),
            ("three-factor m<=4 n in {2,3}", "tower-equivalence"),
            ("three-factor m<=6 n in {2}", "keller-witness"),
        ] {
            let family = parse_family(family).unwrap();
            let checks = select_checks(check, &family).unwrap();
            let report = run(&family, &checks, 1_000_000);
            assert!(report.is_clean(), "{report:?}");
            assert!(report.checks.iter().all(|c| c.evaluated > 0), "{report:?}");
        }
    }

    #[test]
    fn undecided_counts_as_violation() {
        let family = parse_family("subsets max_elem=3 max_size=2").unwrap();
        let report = run(&family, &[Check::TilingImpliesT1], 1);
        assert!(!report.is_clean());
        assert!(report.violations[0].detail.contains("undecided"));
    }
}
