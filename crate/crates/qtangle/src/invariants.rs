//! State-sum cocycle invariants as multisets over the coefficient group.
//!
//! Every coloring of a diagram contributes the sum of its signed
//! Boltzmann weights, one per crossing: `sign * f(source colors)`.
//! For 2-cocycles the source colors are (source under-arc, over-arc);
//! for 3-cocycles a region color is prepended, taken from the quadrant
//! both orientation normals point away from, and the sum runs over all
//! (arc coloring, region coloring) pairs. Tangle invariants sum over
//! boundary-monochromatic colorings for each boundary color, with
//! region colorings based at the leftmost region.
//!
//! Multisets print in polynomial notation `m0 + m1 u^(g1) + ...` with
//! terms ordered by the element encoding, so output is deterministic.

use std::fmt;

use crate::algebra::{AbelianGroup, Elem};
use crate::cocycles::{Cocycle2, Cocycle3};
use crate::colorings;
use crate::diagrams::Diagram;
use crate::error::{Error, Result};

/// A finite multiset of coefficient-group elements.
#[derive(Clone, Debug)]
pub struct Multiset {
    pub group: AbelianGroup,
    counts: Vec<u64>,
}

impl PartialEq for Multiset {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.counts == other.counts
    }
}
impl Eq for Multiset {}

impl Multiset {
    pub fn new(group: AbelianGroup) -> Multiset {
        let n = group.order();
        Multiset {
            group,
            counts: vec![0; n],
        }
    }

    pub fn insert(&mut self, e: Elem, k: u64) {
        self.counts[e as usize] += k;
    }

    pub fn count(&self, e: Elem) -> u64 {
        self.counts[e as usize]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn is_all_zero(&self) -> bool {
        self.counts.iter().skip(1).all(|&c| c == 0)
    }

    pub fn union(&self, other: &Multiset) -> Result<Multiset> {
        self.check_group(other)?;
        let mut out = self.clone();
        for (a, b) in out.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        Ok(out)
    }

    /// Convolution product: `(C x D)(g) = sum over a+b=g of C(a) D(b)`.
    pub fn product(&self, other: &Multiset) -> Result<Multiset> {
        self.check_group(other)?;
        let mut out = Multiset::new(self.group.clone());
        for (a, &ca) in self.counts.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (b, &cb) in other.counts.iter().enumerate() {
                if cb == 0 {
                    continue;
                }
                let g = self.group.add(a as Elem, b as Elem);
                out.counts[g as usize] += ca * cb;
            }
        }
        Ok(out)
    }

    /// Exact division of every multiplicity.
    pub fn divide_exact(&self, k: u64) -> Result<Multiset> {
        let mut out = self.clone();
        for c in out.counts.iter_mut() {
            if *c % k != 0 {
                return Err(Error::Internal(format!(
                    "multiplicity {c} not divisible by {k}"
                )));
            }
            *c /= k;
        }
        Ok(out)
    }

    /// The multiset with every element negated (the mirror image value).
    pub fn negated(&self) -> Multiset {
        let mut out = Multiset::new(self.group.clone());
        for (a, &c) in self.counts.iter().enumerate() {
            out.counts[self.group.neg(a as Elem) as usize] += c;
        }
        out
    }

    pub fn scaled(&self, k: u64) -> Multiset {
        let mut out = self.clone();
        for c in out.counts.iter_mut() {
            *c *= k;
        }
        out
    }

    /// Multiset inclusion: every multiplicity here is dominated.
    pub fn included_in(&self, other: &Multiset) -> Result<bool> {
        self.check_group(other)?;
        Ok(self
            .counts
            .iter()
            .zip(&other.counts)
            .all(|(a, b)| a <= b))
    }

    fn check_group(&self, other: &Multiset) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch(
                self.group.label(),
                other.group.label(),
            ));
        }
        Ok(())
    }

    /// Canonical polynomial notation, e.g. `4 + 12u^(t+1)`.
    pub fn format_polynomial(&self) -> String {
        let mut terms = Vec::new();
        for (e, &c) in self.counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if e == 0 {
                terms.push(c.to_string());
                continue;
            }
            let g = self.group.format_elem(e as Elem);
            let coeff = if c == 1 { String::new() } else { c.to_string() };
            let term = if g == "1" {
                format!("{coeff}u")
            } else if g.len() == 1 {
                format!("{coeff}u^{g}")
            } else {
                format!("{coeff}u^({g})")
            };
            terms.push(term);
        }
        if terms.is_empty() {
            return "0".into();
        }
        terms.join(" + ")
    }

    /// Parse the polynomial notation back into a multiset.
    pub fn parse_polynomial(group: AbelianGroup, text: &str) -> Result<Multiset> {
        let mut ms = Multiset::new(group);
        let text = text.trim();
        if text == "0" {
            return Ok(ms);
        }
        // split on '+' outside parentheses
        let mut depth = 0usize;
        let mut terms = Vec::new();
        let mut cur = String::new();
        for ch in text.chars() {
            match ch {
                '(' => {
                    depth += 1;
                    cur.push(ch);
                }
                ')' => {
                    depth = depth.saturating_sub(1);
                    cur.push(ch);
                }
                '+' if depth == 0 => {
                    terms.push(cur.trim().to_string());
                    cur = String::new();
                }
                _ => cur.push(ch),
            }
        }
        terms.push(cur.trim().to_string());
        for term in terms {
            if term.is_empty() {
                return Err(Error::Parse(format!("empty term in '{text}'")));
            }
            let (count_str, elem) = match term.find('u') {
                None => (term.as_str(), None),
                Some(pos) => {
                    let exp = &term[pos + 1..];
                    let elem = if exp.is_empty() {
                        "1".to_string()
                    } else {
                        let exp = exp
                            .strip_prefix('^')
                            .ok_or_else(|| Error::Parse(format!("expected '^' in '{term}'")))?;
                        exp.trim_start_matches('(').trim_end_matches(')').to_string()
                    };
                    (&term[..pos], Some(elem))
                }
            };
            let count: u64 = if count_str.trim().is_empty() {
                1
            } else {
                count_str
                    .trim()
                    .parse()
                    .map_err(|e| Error::Parse(format!("bad multiplicity '{count_str}': {e}")))?
            };
            let e = match elem {
                None => 0,
                Some(s) => ms.group.parse_elem(&s)?,
            };
            ms.insert(e, count);
        }
        Ok(ms)
    }
}

impl fmt::Display for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_polynomial())
    }
}

/// Per-crossing data for 2-cocycle weights.
struct Weights2 {
    src_arc: usize,
    over_arc: usize,
    positive: bool,
}

fn weights2(d: &Diagram) -> Vec<Weights2> {
    (0..d.crossings.len())
        .map(|c| {
            let (a_in, a_over, a_out) = d.crossing_arcs(c);
            let positive = d.crossings[c].sign > 0;
            Weights2 {
                src_arc: if positive { a_in } else { a_out },
                over_arc: a_over,
                positive,
            }
        })
        .collect()
}

/// Per-crossing data for 3-cocycle weights: the source region is the
/// quadrant both normals point away from (between slots 0-1 at
/// positive crossings, slots 1-2 at negative ones).
struct Weights3 {
    src_face: usize,
    src_arc: usize,
    over_arc: usize,
    positive: bool,
}

fn weights3(d: &Diagram) -> Vec<Weights3> {
    (0..d.crossings.len())
        .map(|c| {
            let (a_in, a_over, a_out) = d.crossing_arcs(c);
            let positive = d.crossings[c].sign > 0;
            let quadrant = if positive { 0 } else { 1 };
            Weights3 {
                src_face: d.faces().quadrant_face[c][quadrant],
                src_arc: if positive { a_in } else { a_out },
                over_arc: a_over,
                positive,
            }
        })
        .collect()
}

fn weight_sum_2(ws: &[Weights2], phi: &Cocycle2, colors: &[Elem]) -> Elem {
    let g = &phi.group;
    let mut acc = g.zero();
    for w in ws {
        let v = phi.value(colors[w.src_arc], colors[w.over_arc]);
        acc = if w.positive { g.add(acc, v) } else { g.sub(acc, v) };
    }
    acc
}

fn weight_sum_3(ws: &[Weights3], theta: &Cocycle3, colors: &[Elem], regions: &[Elem]) -> Elem {
    let g = &theta.group;
    let mut acc = g.zero();
    for w in ws {
        let v = theta.value(
            regions[w.src_face],
            colors[w.src_arc],
            colors[w.over_arc],
        );
        acc = if w.positive { g.add(acc, v) } else { g.sub(acc, v) };
    }
    acc
}

/// 2-cocycle state sum over all colorings of a closed diagram.
pub fn state_sum_2(d: &Diagram, phi: &Cocycle2) -> Result<Multiset> {
    let ws = weights2(d);
    let cols = colorings::colorings(d, &phi.quandle);
    let mut ms = Multiset::new(phi.group.clone());
    for c in &cols {
        ms.insert(weight_sum_2(&ws, phi, c), 1);
    }
    Ok(ms)
}

/// 3-cocycle (shadow) state sum over all colorings and region colorings.
pub fn state_sum_3(d: &Diagram, theta: &Cocycle3) -> Result<Multiset> {
    let q = &theta.quandle;
    let n = q.size() as Elem;
    let cols = colorings::colorings(d, q);
    let mut ms = Multiset::new(theta.group.clone());
    if d.crossings.is_empty() {
        // no weights; |Col| * |X| copies of zero
        ms.insert(0, cols.len() as u64 * n as u64);
        return Ok(ms);
    }
    let ws = weights3(d);
    for c in &cols {
        for s in 0..n {
            let regions = colorings::extend_region_coloring(d, q, c, 0, s)?;
            ms.insert(weight_sum_3(&ws, theta, c, &regions), 1);
        }
    }
    Ok(ms)
}

/// Boundary-monochromatic 2-cocycle invariant of a tangle, with the
/// per-boundary-color pieces retained.
pub struct TangleInvariant2 {
    pub per_x: Vec<Multiset>,
    pub total: Multiset,
    pub tangle: String,
}

pub fn tangle_invariant_2(d: &Diagram, phi: &Cocycle2) -> Result<TangleInvariant2> {
    if !d.is_tangle() {
        return Err(Error::InvalidDiagram("tangle invariant needs a tangle".into()));
    }
    let q = &phi.quandle;
    let ws = weights2(d);
    let n = q.size() as Elem;
    let mut per_x = Vec::with_capacity(n as usize);
    let mut total = Multiset::new(phi.group.clone());
    for x in 0..n {
        let mut mx = Multiset::new(phi.group.clone());
        for c in colorings::enumerate_tangle_colorings(d, q, x) {
            mx.insert(weight_sum_2(&ws, phi, &c), 1);
        }
        total = total.union(&mx)?;
        per_x.push(mx);
    }
    Ok(TangleInvariant2 {
        per_x,
        total,
        tangle: d.name.clone(),
    })
}

/// Boundary-monochromatic 3-cocycle invariant; `per` is indexed by
/// boundary color x and leftmost-region color s.
pub struct TangleInvariant3 {
    pub per: Vec<Vec<Multiset>>,
    pub total: Multiset,
    pub tangle: String,
}

pub fn tangle_invariant_3(d: &Diagram, theta: &Cocycle3) -> Result<TangleInvariant3> {
    if !d.is_tangle() {
        return Err(Error::InvalidDiagram("tangle invariant needs a tangle".into()));
    }
    let q = &theta.quandle;
    let n = q.size() as Elem;
    let base = d
        .faces()
        .leftmost
        .ok_or_else(|| Error::Internal("tangle without a leftmost region".into()))?;
    let ws = weights3(d);
    let mut per = Vec::with_capacity(n as usize);
    let mut total = Multiset::new(theta.group.clone());
    for x in 0..n {
        let cols = colorings::enumerate_tangle_colorings(d, q, x);
        let mut row = Vec::with_capacity(n as usize);
        for s in 0..n {
            let mut ms = Multiset::new(theta.group.clone());
            for c in &cols {
                let regions = colorings::extend_region_coloring(d, q, c, base, s)?;
                ms.insert(weight_sum_3(&ws, theta, c, &regions), 1);
            }
            total = total.union(&ms)?;
            row.push(ms);
        }
        per.push(row);
    }
    Ok(TangleInvariant3 {
        per,
        total,
        tangle: d.name.clone(),
    })
}

/// Outcome of a disjoint-union invariant: the direct definition and
/// the scaled product formula, which must agree when the uniformity
/// condition holds.
pub struct DisjointOutcome {
    pub direct: Multiset,
    pub formula: Multiset,
}

/// Disjoint union of tangles with a 2-cocycle. Requires the uniformity
/// condition `Phi(T_i, x) = Phi(T_i, y)` for all boundary colors;
/// refuses with a witness otherwise.
pub fn disjoint_union_2(invs: &[&TangleInvariant2]) -> Result<DisjointOutcome> {
    if invs.is_empty() {
        return Err(Error::Internal("empty disjoint union".into()));
    }
    let group = invs[0].total.group.clone();
    let nx = invs[0].per_x.len();
    for inv in invs {
        for (x, mx) in inv.per_x.iter().enumerate() {
            if mx != &inv.per_x[0] {
                return Err(Error::Condition {
                    tangle: inv.tangle.clone(),
                    witness: format!(
                        "Phi(T,0) = {} but Phi(T,{x}) = {}",
                        inv.per_x[0].format_polynomial(),
                        mx.format_polynomial()
                    ),
                });
            }
        }
    }
    // direct definition: sum over x of the product of the per-x pieces
    let mut direct = Multiset::new(group.clone());
    for x in 0..nx {
        let mut prod = invs[0].per_x[x].clone();
        for inv in &invs[1..] {
            prod = prod.product(&inv.per_x[x])?;
        }
        direct = direct.union(&prod)?;
    }
    // product formula: (Phi(T_1) x ... x Phi(T_k)) / |X|^(k-1)
    let mut formula = invs[0].total.clone();
    for inv in &invs[1..] {
        formula = formula.product(&inv.total)?;
    }
    let scale = (nx as u64).pow(invs.len() as u32 - 1);
    let formula = formula.divide_exact(scale)?;
    if direct != formula {
        return Err(Error::Internal(format!(
            "disjoint union mismatch: direct {} vs formula {}",
            direct.format_polynomial(),
            formula.format_polynomial()
        )));
    }
    Ok(DisjointOutcome { direct, formula })
}

/// Disjoint union with a 3-cocycle; the condition quantifies over both
/// the boundary color and the leftmost-region color, and the product
/// formula divides by `|X|^(2(k-1))`.
pub fn disjoint_union_3(invs: &[&TangleInvariant3]) -> Result<DisjointOutcome> {
    if invs.is_empty() {
        return Err(Error::Internal("empty disjoint union".into()));
    }
    let group = invs[0].total.group.clone();
    let nx = invs[0].per.len();
    for inv in invs {
        let first = &inv.per[0][0];
        for (x, row) in inv.per.iter().enumerate() {
            for (s, ms) in row.iter().enumerate() {
                if ms != first {
                    return Err(Error::Condition {
                        tangle: inv.tangle.clone(),
                        witness: format!(
                            "Phi(T,0,0) = {} but Phi(T,{x},{s}) = {}",
                            first.format_polynomial(),
                            ms.format_polynomial()
                        ),
                    });
                }
            }
        }
    }
    let mut direct = Multiset::new(group.clone());
    for x in 0..nx {
        for s in 0..nx {
            let mut prod = invs[0].per[x][s].clone();
            for inv in &invs[1..] {
                prod = prod.product(&inv.per[x][s])?;
            }
            direct = direct.union(&prod)?;
        }
    }
    let mut formula = invs[0].total.clone();
    for inv in &invs[1..] {
        formula = formula.product(&inv.total)?;
    }
    let scale = (nx as u64).pow(2 * (invs.len() as u32 - 1));
    let formula = formula.divide_exact(scale)?;
    if direct != formula {
        return Err(Error::Internal(format!(
            "disjoint union mismatch: direct {} vs formula {}",
            direct.format_polynomial(),
            formula.format_polynomial()
        )));
    }
    Ok(DisjointOutcome { direct, formula })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Quandle;
    use crate::diagrams::{BraidWord, Tangle};
    use std::sync::Arc;

    fn f4() -> Arc<Quandle> {
        Quandle::from_spec("alexander:2:t^2+t+1").unwrap()
    }

    #[test]
    fn multiset_product_identity_and_totals() {
        let g = AbelianGroup::Cyclic(3);
        let mut a = Multiset::new(g.clone());
        a.insert(0, 1);
        a.insert(1, 2);
        let mut one = Multiset::new(g.clone());
        one.insert(0, 1);
        assert_eq!(a.product(&one).unwrap(), a);
        let sq = a.product(&a).unwrap();
        assert_eq!(sq.total(), a.total() * a.total());
        // (1+2u)^2 = 1 + 4u + 4u^2 over Z_3
        assert_eq!(sq.format_polynomial(), "1 + 4u + 4u^2");
    }

    #[test]
    fn multiset_product_char2_exponents() {
        // (4 + 12u^(t+1))^2 = 160 + 96u^(t+1) since 2(t+1) = 0 in char 2
        let ring = crate::algebra::AlexanderRing::parse(2, "t^2+t+1").unwrap();
        let g = AbelianGroup::Ring(ring.clone());
        let mut a = Multiset::new(g.clone());
        a.insert(0, 4);
        a.insert(ring.parse_elem("t+1").unwrap(), 12);
        let sq = a.product(&a).unwrap();
        assert_eq!(sq.format_polynomial(), "160 + 96u^(t+1)");
    }

    #[test]
    fn format_and_parse_round_trip() {
        let ring = crate::algebra::AlexanderRing::parse(2, "t^2+t+1").unwrap();
        let g = AbelianGroup::Ring(ring.clone());
        let mut m = Multiset::new(g.clone());
        m.insert(0, 4);
        m.insert(ring.parse_elem("t+1").unwrap(), 12);
        let s = m.format_polynomial();
        assert_eq!(s, "4 + 12u^(t+1)");
        assert_eq!(Multiset::parse_polynomial(g.clone(), &s).unwrap(), m);
        let empty = Multiset::new(g.clone());
        assert_eq!(empty.format_polynomial(), "0");
        assert_eq!(Multiset::parse_polynomial(g, "0").unwrap(), empty);
    }

    #[test]
    fn parse_plain_u_terms() {
        let g = AbelianGroup::Cyclic(3);
        let m = Multiset::parse_polynomial(g.clone(), "9 + 18u").unwrap();
        assert_eq!(m.count(0), 9);
        assert_eq!(m.count(1), 18);
        assert_eq!(m.format_polynomial(), "9 + 18u");
        let m2 = Multiset::parse_polynomial(g, "1 + u + u^2").unwrap();
        assert_eq!(m2.count(1), 1);
        assert_eq!(m2.count(2), 1);
    }

    #[test]
    fn unknot_state_sums() {
        let d = BraidWord::parse("1").unwrap().close("unknot").unwrap();
        assert_eq!(d.free_loops, 1);
        let q = f4();
        let phi = Cocycle2::poly(q.clone(), "(x-y)^2*y").unwrap();
        let ms = state_sum_2(&d, &phi).unwrap();
        assert_eq!(ms.total(), 4);
        assert!(ms.is_all_zero());
        let theta = Cocycle3::poly(q, "(x-y)*(y-z)^2").unwrap();
        let ms3 = state_sum_3(&d, &theta).unwrap();
        assert_eq!(ms3.total(), 16);
        assert!(ms3.is_all_zero());
    }

    #[test]
    fn zero_cocycle_gives_zero_multiset() {
        let d = BraidWord::parse("2 1 1 1").unwrap().close("3_1").unwrap();
        let q = Quandle::dihedral(3);
        let phi = Cocycle2::zero(q.clone(), AbelianGroup::Cyclic(3));
        let ms = state_sum_2(&d, &phi).unwrap();
        assert_eq!(ms.total(), 9);
        assert!(ms.is_all_zero());
    }

    #[test]
    fn trefoil_two_cocycle_paper_value() {
        let d = BraidWord::parse("2 1 1 1").unwrap().close("3_1").unwrap();
        let phi = Cocycle2::poly(f4(), "(x-y)^2*y").unwrap();
        let ms = state_sum_2(&d, &phi).unwrap();
        assert_eq!(ms.format_polynomial(), "4 + 12u^(t+1)");
    }

    #[test]
    fn trefoil_shadow_p2_paper_value() {
        let d = BraidWord::parse("2 1 1 1").unwrap().close("3_1").unwrap();
        let theta = Cocycle3::poly(f4(), "(x-y)*(y-z)^2").unwrap();
        let ms = state_sum_3(&d, &theta).unwrap();
        assert_eq!(ms.format_polynomial(), "16 + 48u^t");
    }

    #[test]
    fn trivial_tangle_invariants() {
        let t = Tangle::zero().finalize("0").unwrap();
        let phi = Cocycle2::poly(f4(), "(x-y)^2*y").unwrap();
        let inv = tangle_invariant_2(&t, &phi).unwrap();
        assert_eq!(inv.total.total(), 4);
        assert!(inv.total.is_all_zero());
    }

    #[test]
    fn mirror_negates_state_sum() {
        let d = BraidWord::parse("2 1 1 1").unwrap().close("3_1").unwrap();
        let m = crate::diagrams::mirror_diagram(&d).unwrap();
        let q = Quandle::from_spec("alexander:3:t^2-t+1").unwrap();
        let theta = Cocycle3::poly(q, "(x-y)*(y-z)^3").unwrap();
        let a = state_sum_3(&d, &theta).unwrap();
        let b = state_sum_3(&m, &theta).unwrap();
        assert_eq!(a.negated(), b);
    }
}
