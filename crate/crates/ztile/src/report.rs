//! Structured reports and their two renderings: a JSON object with a fixed
//! key order, and `key: value` lines for people.

use serde::Serialize;
use serde_json::Value;

use ztile_core::analysis::{classify_prime_power_cyclotomic, power_sums};
use ztile_core::products::{
    keller_violation_witness, product_poly, product_set, tower_condition, two_factor_condition,
};
use ztile_core::spectra::{
    construct_spectrum, max_spectrum_size, spectrum_search, verify_spectrum,
};
use ztile_core::tiler::{decide_tiling_with, granville_bound_from};
use ztile_core::tileset::cyclotomic_divisors;
use ztile_core::{IntSet, ProductSpec, RationalSpectrum, Theta, TilingOutcome};

use crate::parse::InputError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Tiling {
    Tiles {
        period: u64,
        complement: Vec<u64>,
    },
    DoesNotTile,
    /// `bound` is null when the period bound overflows 64 bits.
    Undecided {
        bound: Option<u64>,
        cap: u64,
    },
}

impl Tiling {
    fn from_outcome(outcome: TilingOutcome, cap: u64) -> Self {
        match outcome {
            TilingOutcome::Tiles(c) => Tiling::Tiles {
                period: c.period(),
                complement: c.complement().to_vec(),
            },
            TilingOutcome::DoesNotTile => Tiling::DoesNotTile,
            TilingOutcome::Undecided { bound } => Tiling::Undecided { bound, cap },
        }
    }

    pub fn tiles(&self) -> Option<bool> {
        match self {
            Tiling::Tiles { .. } => Some(true),
            Tiling::DoesNotTile => Some(false),
            Tiling::Undecided { .. } => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub p: u64,
    pub alpha: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub set: Vec<u64>,
    pub n: usize,
    /// Degree of the characteristic polynomial of the set translated to 0.
    pub degree: u64,
    pub cyclotomic_divisors: Vec<u64>,
    pub prime_power_divisors: Vec<u64>,
    pub t1: bool,
    pub t2: bool,
    pub granville_l: Option<u64>,
    pub tiling: Tiling,
    /// From the explicit formula; present exactly when (T1) and (T2) hold.
    pub spectrum: Option<Vec<String>>,
    pub classification: Option<Classification>,
}

fn fractions(s: &RationalSpectrum) -> Vec<String> {
    s.thetas().iter().map(Theta::to_string).collect()
}

pub fn analyze(a: &IntSet, lcap: u64) -> AnalysisReport {
    let (a0, _) = a.normalized();
    let poly = a0.char_poly();
    let divs = cyclotomic_divisors(&a0);
    let t1 = divs.t1_holds(a0.len() as u64);
    let t2 = divs.t2_holds(&poly);
    let tiling = Tiling::from_outcome(decide_tiling_with(a, &divs, Some(lcap)), lcap);
    let spectrum = (t1 && t2)
        .then(|| construct_spectrum(a))
        .flatten()
        .map(|s| fractions(&s));
    AnalysisReport {
        set: a.elements().to_vec(),
        n: a.len(),
        degree: a.span(),
        cyclotomic_divisors: divs.all().to_vec(),
        prime_power_divisors: divs.prime_powers().to_vec(),
        t1,
        t2,
        granville_l: granville_bound_from(&divs),
        tiling,
        spectrum,
        classification: classify(a),
    }
}

fn classify(a: &IntSet) -> Option<Classification> {
    classify_prime_power_cyclotomic(a).map(|(p, alpha)| Classification { p, alpha })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TileReport {
    pub set: Vec<u64>,
    pub granville_l: Option<u64>,
    pub tiling: Tiling,
}

pub fn tile(a: &IntSet, lcap: u64) -> TileReport {
    let divs = cyclotomic_divisors(a);
    TileReport {
        set: a.elements().to_vec(),
        granville_l: granville_bound_from(&divs),
        tiling: Tiling::from_outcome(decide_tiling_with(a, &divs, Some(lcap)), lcap),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectrumMode {
    Construct,
    Search,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumReport {
    pub set: Vec<u64>,
    pub mode: SpectrumMode,
    /// The points besides 0; null when none was found.
    pub spectrum: Option<Vec<String>>,
}

pub fn spectrum(a: &IntSet, mode: SpectrumMode) -> SpectrumReport {
    let found = match mode {
        SpectrumMode::Construct => construct_spectrum(a),
        SpectrumMode::Search => spectrum_search(a),
    };
    SpectrumReport {
        set: a.elements().to_vec(),
        mode,
        spectrum: found.as_ref().map(fractions),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub set: Vec<u64>,
    pub thetas: Vec<String>,
    /// Root conditions hold for every pair, 0 included.
    pub roots_ok: bool,
    /// The list has `#A - 1` points.
    pub size_ok: bool,
    pub verified: bool,
}

/// Checks `0` together with `thetas` as a spectrum of `a`.
pub fn verify(a: &IntSet, thetas: Vec<Theta>) -> Result<VerifyReport, InputError> {
    let shown: Vec<String> = thetas.iter().map(Theta::to_string).collect();
    let spec = RationalSpectrum::new(thetas).map_err(|_| {
        InputError("theta: points must be distinct and nonzero (0 is implicit)".into())
    })?;
    let roots_ok = verify_spectrum(a, &spec);
    let size_ok = spec.len() + 1 == a.len();
    Ok(VerifyReport {
        set: a.elements().to_vec(),
        thetas: shown,
        roots_ok,
        size_ok,
        verified: roots_ok && size_ok,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductSetReport {
    pub set: Vec<u64>,
    pub t1: bool,
    pub t2: bool,
    pub tiling: Tiling,
    pub spectrum: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductReport {
    pub spec: String,
    pub size: u64,
    pub zero_one: bool,
    /// Nonzero coefficients of the product; no spectrum is larger.
    pub max_spectrum_size: usize,
    pub full_spectrum_possible: bool,
    /// 1-based factor labels, bottom of the tower first.
    pub tower: Option<Vec<usize>>,
    pub two_factor_condition: Option<bool>,
    pub keller_witness: Option<Vec<i64>>,
    /// Present when the product has 0/1 coefficients.
    pub product_set: Option<ProductSetReport>,
}

pub fn product(spec: &ProductSpec, lcap: u64) -> ProductReport {
    let poly = product_poly(spec);
    let max_spec = max_spectrum_size(&poly)
        .expect("a product of geometric series has no negative coefficient");
    let set = product_set(spec);
    let product_set = set.as_ref().map(|a| {
        let divs = cyclotomic_divisors(a);
        let t1 = divs.t1_holds(a.len() as u64);
        let t2 = divs.t2_holds(&a.char_poly());
        ProductSetReport {
            set: a.elements().to_vec(),
            t1,
            t2,
            tiling: Tiling::from_outcome(decide_tiling_with(a, &divs, Some(lcap)), lcap),
            spectrum: (t1 && t2)
                .then(|| construct_spectrum(a))
                .flatten()
                .map(|s| fractions(&s)),
        }
    });
    ProductReport {
        spec: spec.to_string(),
        size: spec.size(),
        zero_one: set.is_some(),
        max_spectrum_size: max_spec,
        full_spectrum_possible: max_spec as u64 >= spec.size(),
        tower: tower_condition(spec).map(|o| o.into_iter().map(|i| i + 1).collect()),
        two_factor_condition: two_factor_condition(spec).ok(),
        keller_witness: keller_violation_witness(spec).map(|w| w.vector().to_vec()),
        product_set,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerSumReport {
    pub set: Vec<u64>,
    pub count: usize,
    /// `S_1, ..., S_count` over the roots of the characteristic polynomial.
    pub values: Vec<i64>,
}

pub fn powersums(a: &IntSet, count: usize) -> Result<PowerSumReport, InputError> {
    let values = power_sums(&a.normalized().0.char_poly(), count)
        .map_err(|e| InputError(format!("powersums: {e}")))?;
    Ok(PowerSumReport {
        set: a.elements().to_vec(),
        count,
        values: values.values().to_vec(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassifyReport {
    pub set: Vec<u64>,
    pub classification: Option<Classification>,
}

pub fn classification(a: &IntSet) -> ClassifyReport {
    ClassifyReport {
        set: a.elements().to_vec(),
        classification: classify(a),
    }
}

/// One line of JSON, keys in declaration order.
pub fn render_json<T: Serialize>(report: &T) -> String {
    let mut line = serde_json::to_string(report).expect("reports serialize");
    line.push('\n');
    line
}

/// One `key: value` line per scalar, nested keys joined with dots, lists of
/// scalars comma-separated, null as `-`.
pub fn render_human<T: Serialize>(report: &T) -> String {
    let value = serde_json::to_value(report).expect("reports serialize");
    let mut lines = Vec::new();
    flatten("", &value, &mut lines);
    let width = lines.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    lines
        .iter()
        .map(|(k, v)| format!("{k:<width$}  {v}\n"))
        .collect()
}

fn flatten(prefix: &str, value: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_owned()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&key(k), v, out);
            }
        }
        Value::Array(items) if items.iter().any(|v| v.is_object() || v.is_array()) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), v, out);
            }
        }
        Value::Array(items) => {
            let joined: Vec<String> = items.iter().map(scalar).collect();
            out.push((prefix.to_owned(), format!("[{}]", joined.join(", "))));
        }
        v => out.push((prefix.to_owned(), scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "-".to_owned(),
        Value::String(s) => s.clone(),
        v => v.to_string(),
    }
}
