//! Embedding obstructions from multiset inclusion.
//!
//! If an oriented tangle embeds in an oriented link, every boundary-
//! monochromatic coloring of the tangle extends to a coloring of the
//! link (color everything outside the tangle with the boundary color),
//! and the weight contributions agree. The tangle's invariant multiset
//! is therefore included in the link's; a failed inclusion excludes
//! the embedding. Scans run that test for one tangle against a whole
//! knot table, spec by spec in ascending quandle size, short-circuiting
//! on the first exclusion.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::Quandle;
use crate::catalog::InvariantCache;
use crate::cocycles::Cocycle;
use crate::diagrams::Diagram;
use crate::error::{Error, Result};
use crate::invariants::{self, Multiset};

/// A (quandle, cocycle) pair named by its spec strings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantSpec {
    pub quandle: String,
    pub cocycle: String,
}

impl InvariantSpec {
    pub fn new(quandle: &str, cocycle: &str) -> InvariantSpec {
        InvariantSpec {
            quandle: quandle.into(),
            cocycle: cocycle.into(),
        }
    }

    pub fn parse(s: &str) -> Result<InvariantSpec> {
        let (q, c) = s
            .split_once('/')
            .ok_or_else(|| Error::Parse(format!("spec '{s}' (expected <quandle>/<cocycle>)")))?;
        Ok(InvariantSpec::new(q.trim(), c.trim()))
    }

    pub fn resolve(&self) -> Result<(Arc<Quandle>, Cocycle)> {
        let q = Quandle::from_spec(&self.quandle)?;
        let c = Cocycle::from_spec(&q, &self.cocycle)?;
        Ok((q, c))
    }

    pub fn key(&self) -> String {
        format!("{}/{}", self.quandle, self.cocycle)
    }

    /// Quandle size, used to order specs cheapest-first.
    pub fn quandle_size(&self) -> Result<usize> {
        Ok(Quandle::from_spec(&self.quandle)?.size())
    }
}

impl fmt::Display for InvariantSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.key())
    }
}

/// The four shadow specs of the `Z_p[t]/(t^2-t+1)` family.
pub fn prop2_specs() -> Vec<InvariantSpec> {
    [2u16, 3, 5, 7]
        .iter()
        .map(|p| {
            InvariantSpec::new(
                &format!("alexander:{p}:t^2-t+1"),
                &format!("poly3:(x-y)*(y-z)^{p}"),
            )
        })
        .collect()
}

/// The two-stage spec list used for the second table scan: the p = 5
/// shadow spec plus the dihedral Mochizuki cocycle on R_3.
pub fn prop3_specs() -> Vec<InvariantSpec> {
    vec![
        InvariantSpec::new("dihedral:3", "mochizuki:3"),
        InvariantSpec::new("alexander:5:t^2-t+1", "poly3:(x-y)*(y-z)^5"),
    ]
}

/// Resolve a named spec bundle or a semicolon-separated list.
pub fn parse_spec_set(s: &str) -> Result<Vec<InvariantSpec>> {
    match s {
        "prop2" => Ok(prop2_specs()),
        "prop3" => Ok(prop3_specs()),
        other => other
            .split(';')
            .filter(|p| !p.trim().is_empty())
            .map(InvariantSpec::parse)
            .collect(),
    }
}

/// Multiset inclusion: every multiplicity of `m` is dominated in `n`.
pub fn multiset_included(m: &Multiset, n: &Multiset) -> Result<bool> {
    m.included_in(n)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Excluded {
        witness: InvariantSpec,
        tangle_value: String,
        knot_value: String,
    },
    NotExcluded,
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub tangle: String,
    pub knot: String,
    pub outcome: Outcome,
}

impl Verdict {
    /// Machine-readable line: `verdict <tangle> <knot> <excluded|open> [spec]`.
    pub fn line(&self) -> String {
        match &self.outcome {
            Outcome::Excluded { witness, .. } => {
                format!("verdict {} {} excluded {}", self.tangle, self.knot, witness)
            }
            Outcome::NotExcluded => format!("verdict {} {} open", self.tangle, self.knot),
        }
    }
}

/// Compute (through the cache when available) the tangle-or-knot
/// invariant multiset for one spec.
pub fn invariant_multiset(
    d: &Diagram,
    spec: &InvariantSpec,
    cache: Option<&InvariantCache>,
) -> Result<Multiset> {
    let (q, cocycle) = spec.resolve()?;
    if let Some(cache) = cache {
        if let Some(text) = cache.get(&d.name, &spec.quandle, &spec.cocycle) {
            let group = cocycle.group().clone();
            return Multiset::parse_polynomial(group, &text);
        }
    }
    let _ = q;
    let ms = match (&cocycle, d.is_tangle()) {
        (Cocycle::Two(phi), false) => invariants::state_sum_2(d, phi)?,
        (Cocycle::Three(theta), false) => invariants::state_sum_3(d, theta)?,
        (Cocycle::Two(phi), true) => invariants::tangle_invariant_2(d, phi)?.total,
        (Cocycle::Three(theta), true) => invariants::tangle_invariant_3(d, theta)?.total,
    };
    if let Some(cache) = cache {
        cache.put(&d.name, &spec.quandle, &spec.cocycle, &ms.format_polynomial());
    }
    Ok(ms)
}

/// Test one tangle (multiset precomputed per spec) against one knot.
fn check_against(
    tangle_name: &str,
    tangle_values: &[(InvariantSpec, Multiset)],
    knot: &Diagram,
    cache: Option<&InvariantCache>,
) -> Result<Verdict> {
    for (spec, tv) in tangle_values {
        // counting shortcut: a knot whose colorings are all constant
        // contributes |X| (or |X|^2 with regions) zeros; if the tangle
        // multiset is bigger, inclusion must fail on the zero count.
        let kv = invariant_multiset(knot, spec, cache)?;
        if !multiset_included(tv, &kv)? {
            return Ok(Verdict {
                tangle: tangle_name.into(),
                knot: knot.name.clone(),
                outcome: Outcome::Excluded {
                    witness: spec.clone(),
                    tangle_value: tv.format_polynomial(),
                    knot_value: kv.format_polynomial(),
                },
            });
        }
    }
    Ok(Verdict {
        tangle: tangle_name.into(),
        knot: knot.name.clone(),
        outcome: Outcome::NotExcluded,
    })
}

/// Obstruction check for a single tangle/knot pair over a spec list.
pub fn check_embedding_obstruction(
    tangle: &Diagram,
    knot: &Diagram,
    specs: &[InvariantSpec],
    cache: Option<&InvariantCache>,
) -> Result<Verdict> {
    let specs = ordered(specs.to_vec())?;
    let mut values = Vec::new();
    for spec in &specs {
        values.push((spec.clone(), invariant_multiset(tangle, spec, cache)?));
    }
    check_against(&tangle.name, &values, knot, cache)
}

fn ordered(mut specs: Vec<InvariantSpec>) -> Result<Vec<InvariantSpec>> {
    let mut keyed: Vec<(usize, InvariantSpec)> = Vec::with_capacity(specs.len());
    for s in specs.drain(..) {
        keyed.push((s.quandle_size()?, s));
    }
    keyed.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.key().cmp(&b.1.key())));
    Ok(keyed.into_iter().map(|(_, s)| s).collect())
}

/// Report of a full table scan.
pub struct ScanReport {
    pub tangle: String,
    pub verdicts: Vec<Verdict>,
    /// Knots left open per spec (the per-spec exception lists), in
    /// the same order as the spec list used for the scan.
    pub per_spec_open: Vec<(InvariantSpec, Vec<String>)>,
}

impl ScanReport {
    pub fn open_set(&self) -> Vec<String> {
        self.verdicts
            .iter()
            .filter(|v| v.outcome == Outcome::NotExcluded)
            .map(|v| v.knot.clone())
            .collect()
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("scan: tangle {}\n", self.tangle));
        for (spec, open) in &self.per_spec_open {
            out.push_str(&format!(
                "  spec {spec}: {} knots open: {}\n",
                open.len(),
                open.join(", ")
            ));
        }
        let open = self.open_set();
        out.push_str(&format!(
            "may embed in ({} of {}): {}\n",
            open.len(),
            self.verdicts.len(),
            open.join(", ")
        ));
        out
    }

    pub fn lines(&self) -> String {
        let mut out = String::new();
        for v in &self.verdicts {
            out.push_str(&v.line());
            out.push('\n');
        }
        out
    }
}

/// Scan one tangle's invariant against every knot in the table.
pub fn scan_table(
    tangle: &Diagram,
    tangle_name: &str,
    knots: &[Diagram],
    specs: &[InvariantSpec],
    cache: Option<&InvariantCache>,
) -> Result<ScanReport> {
    let specs = ordered(specs.to_vec())?;
    let mut values = Vec::new();
    for spec in &specs {
        values.push((spec.clone(), invariant_multiset(tangle, spec, cache)?));
    }
    scan_values(tangle_name, &values, knots, cache)
}

/// Scan with a precomputed multiset per spec (used by the disjoint
/// scan, where the "tangle" value is a disjoint-union invariant).
pub fn scan_values(
    tangle_name: &str,
    values: &[(InvariantSpec, Multiset)],
    knots: &[Diagram],
    cache: Option<&InvariantCache>,
) -> Result<ScanReport> {
    let verdicts: Result<Vec<Verdict>> = knots
        .par_iter()
        .map(|k| check_against(tangle_name, values, k, cache))
        .collect();
    let verdicts = verdicts?;
    // per-spec open lists (each spec alone)
    let mut per_spec_open = Vec::new();
    for (spec, tv) in values {
        let open: Result<Vec<Option<String>>> = knots
            .par_iter()
            .map(|k| {
                let kv = invariant_multiset(k, spec, cache)?;
                Ok(if multiset_included(tv, &kv)? {
                    Some(k.name.clone())
                } else {
                    None
                })
            })
            .collect();
        per_spec_open.push((spec.clone(), open?.into_iter().flatten().collect()));
    }
    Ok(ScanReport {
        tangle: tangle_name.into(),
        verdicts,
        per_spec_open,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AbelianGroup;

    fn ms(g: &AbelianGroup, pairs: &[(u16, u64)]) -> Multiset {
        let mut m = Multiset::new(g.clone());
        for &(e, c) in pairs {
            m.insert(e, c);
        }
        m
    }

    #[test]
    fn inclusion_basics() {
        let g = AbelianGroup::Cyclic(5);
        let a = ms(&g, &[(0, 2)]);
        let b = ms(&g, &[(0, 2), (1, 1)]);
        assert!(multiset_included(&a, &b).unwrap());
        assert!(!multiset_included(&b, &a).unwrap());
        assert!(multiset_included(&a, &a).unwrap());
        // {0 x 16} not included in {0 x 4, x x 12}
        let big = ms(&g, &[(0, 16)]);
        let mixed = ms(&g, &[(0, 4), (1, 12)]);
        assert!(!multiset_included(&big, &mixed).unwrap());
    }

    #[test]
    fn group_mismatch_is_an_error() {
        let a = ms(&AbelianGroup::Cyclic(3), &[(0, 1)]);
        let b = ms(&AbelianGroup::Cyclic(5), &[(0, 1)]);
        assert!(multiset_included(&a, &b).is_err());
    }

    #[test]
    fn spec_parsing_and_bundles() {
        let s = InvariantSpec::parse("dihedral:3/mochizuki:3").unwrap();
        assert_eq!(s.quandle, "dihedral:3");
        assert!(s.resolve().is_ok());
        assert_eq!(prop2_specs().len(), 4);
        assert_eq!(parse_spec_set("prop3").unwrap().len(), 2);
        assert!(parse_spec_set("junk").is_err());
    }
}
