//! Input grammars: set literals, product literals, fraction lists and batch
//! family descriptions.

use std::fmt;

use ztile_core::products::MAX_FACTORS;
use ztile_core::{IntSet, ProductSpec, Theta};

/// Malformed input; reported with exit code 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn err<T>(msg: impl Into<String>) -> Result<T, InputError> {
    Err(InputError(msg.into()))
}

fn items(s: &str) -> impl Iterator<Item = &str> {
    s.split(',').map(str::trim)
}

fn number(token: &str, what: &str) -> Result<u64, InputError> {
    token.parse().map_err(|_| {
        InputError(format!(
            "{what}: expected a nonnegative integer, got {token:?}"
        ))
    })
}

/// `"0,1,3"`: comma-separated nonnegative integers, at least two distinct.
pub fn parse_set(s: &str) -> Result<IntSet, InputError> {
    let values = items(s)
        .map(|t| number(t, "set"))
        .collect::<Result<Vec<_>, _>>()?;
    IntSet::new(values).map_err(|e| InputError(format!("set {s:?}: {e}")))
}

/// `"1:2,3:2"`: comma-separated `m:n` pairs, `m >= 1`, `n >= 2`, at most
/// eight of them.
pub fn parse_product(s: &str) -> Result<ProductSpec, InputError> {
    let pairs = items(s)
        .map(|t| {
            let Some((m, n)) = t.split_once(':') else {
                return err(format!("product: expected m:n, got {t:?}"));
            };
            Ok((number(m.trim(), "product")?, number(n.trim(), "product")?))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if pairs.len() > MAX_FACTORS {
        return err(format!(
            "product: {} factors, at most {MAX_FACTORS} allowed",
            pairs.len()
        ));
    }
    ProductSpec::new(pairs).map_err(|e| InputError(format!("product {s:?}: {e}")))
}

/// `"1/4,1/2"`: reduced fractions in `[0, 1)`.
pub fn parse_thetas(s: &str) -> Result<Vec<Theta>, InputError> {
    items(s)
        .map(|t| {
            t.parse::<Theta>().map_err(|_| {
                InputError(format!(
                    "theta: expected a reduced fraction p/q in [0, 1), got {t:?}"
                ))
            })
        })
        .collect()
}

/// An enumerable family of instances for `batch`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// Every `A ⊆ {0, ..., max_elem}` with `2 <= #A <= max_size`.
    Subsets { max_elem: u64, max_size: usize },
    /// Every `(m1:n1, m2:n2)` with `m_i <= max_m`, `2 <= n_i <= max_n`.
    TwoFactor { max_m: u64, max_n: u64 },
    /// Every `(m1:n1, m2:n2, m3:n3)` with `m_i <= max_m`, `n_i` from `ns`.
    ThreeFactor { max_m: u64, ns: Vec<u64> },
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Subsets { max_elem, max_size } => {
                write!(f, "subsets max_elem={max_elem} max_size={max_size}")
            }
            Family::TwoFactor { max_m, max_n } => write!(f, "two-factor m<={max_m} n<={max_n}"),
            Family::ThreeFactor { max_m, ns } => {
                let ns: Vec<String> = ns.iter().map(u64::to_string).collect();
                write!(f, "three-factor m<={max_m} n in {{{}}}", ns.join(","))
            }
        }
    }
}

/// Largest `max_elem` for the subsets family.
pub const MAX_SUBSET_ELEMENT: u64 = 40;

/// Parses a family description. Parameters are whitespace-separated;
/// `≤` and `<=` are interchangeable, as are `∈` and `in`.
pub fn parse_family(s: &str) -> Result<Family, InputError> {
    let normalized = s.replace('≤', "<=").replace('∈', " in ");
    let mut words = normalized.split_whitespace();
    let kind = words.next().unwrap_or("");
    let rest: Vec<&str> = words.collect();
    match kind {
        "subsets" => {
            let max_elem = keyed(&rest, "max_elem=")?;
            let max_size = keyed(&rest, "max_size=")?;
            if max_elem > MAX_SUBSET_ELEMENT {
                return err(format!("subsets: max_elem is at most {MAX_SUBSET_ELEMENT}"));
            }
            expect_len(&rest, 2, kind)?;
            Ok(Family::Subsets {
                max_elem,
                max_size: max_size as usize,
            })
        }
        "two-factor" => {
            let max_m = keyed(&rest, "m<=")?;
            let max_n = keyed(&rest, "n<=")?;
            expect_len(&rest, 2, kind)?;
            if max_m < 1 || max_n < 2 {
                return err("two-factor: need m<=M with M >= 1 and n<=N with N >= 2");
            }
            Ok(Family::TwoFactor { max_m, max_n })
        }
        "three-factor" => {
            let max_m = keyed(&rest, "m<=")?;
            let joined = rest
                .iter()
                .filter(|w| !w.starts_with("m<="))
                .copied()
                .collect::<String>();
            let Some(set) = joined.strip_prefix("nin") else {
                return err("three-factor: expected n in {a,b,...}");
            };
            let inner = set
                .strip_prefix('{')
                .and_then(|t| t.strip_suffix('}'))
                .ok_or_else(|| {
                    InputError("three-factor: expected braces around the n values".into())
                })?;
            let mut ns = items(inner)
                .map(|t| number(t, "three-factor"))
                .collect::<Result<Vec<_>, _>>()?;
            ns.sort_unstable();
            ns.dedup();
            if max_m < 1 || ns.is_empty() || ns[0] < 2 {
                return err("three-factor: need m<=M with M >= 1 and every n >= 2");
            }
            Ok(Family::ThreeFactor { max_m, ns })
        }
        _ => err(format!(
            "unknown family {kind:?}; expected subsets, two-factor or three-factor"
        )),
    }
}

fn keyed(words: &[&str], key: &str) -> Result<u64, InputError> {
    let mut found = words.iter().filter_map(|w| w.strip_prefix(key));
    match (found.next(), found.next()) {
        (Some(v), None) => number(v, key.trim_end_matches(['=', '<'])),
        (None, _) => err(format!("missing {key}<value>")),
        (Some(_), Some(_)) => err(format!("{key} given twice")),
    }
}

fn expect_len(words: &[&str], n: usize, kind: &str) -> Result<(), InputError> {
    if words.len() == n {
        Ok(())
    } else {
        err(format!("{kind}: unexpected parameters in {words:?}"))
    }
}
