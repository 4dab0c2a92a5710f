//! Quandle colorings of diagrams.
//!
//! A coloring assigns a quandle element to every arc so that at each
//! crossing the outgoing under-arc is the incoming under-arc acted on
//! by the over-arc: `out = in * over` at positive crossings and
//! `out = unstar(in, over)` at negative ones (the relation read
//! against the over-arc's normal).
//!
//! Two enumeration routes are provided: a backtracking search with
//! constraint propagation (works for any quandle), and a linear
//! solver for Alexander and prime dihedral quandles that rewrites the
//! crossing relations as a Z_p-linear system componentwise and
//! enumerates the kernel. The two routes agree on every diagram and
//! are cross-checked in tests.

use crate::algebra::{Elem, Quandle, QuandleKind};
use crate::diagrams::Diagram;
use crate::error::{Error, Result};

/// Arc colors indexed by arc id.
pub type Coloring = Vec<Elem>;

#[derive(Clone, Copy, Debug)]
pub(crate) struct CrossingRelation {
    pub arc_in: usize,
    pub arc_over: usize,
    pub arc_out: usize,
    pub positive: bool,
}

pub(crate) fn relations(d: &Diagram) -> Vec<CrossingRelation> {
    (0..d.crossings.len())
        .map(|c| {
            let (arc_in, arc_over, arc_out) = d.crossing_arcs(c);
            CrossingRelation {
                arc_in,
                arc_over,
                arc_out,
                positive: d.crossings[c].sign > 0,
            }
        })
        .collect()
}

/// Check the crossing relation at every crossing.
pub fn check_coloring(d: &Diagram, q: &Quandle, colors: &[Elem]) -> bool {
    relations(d).iter().all(|r| {
        let (a, b, c) = (colors[r.arc_in], colors[r.arc_over], colors[r.arc_out]);
        if r.positive {
            q.op(a, b) == c
        } else {
            q.unstar(a, b) == c
        }
    })
}

/// All colorings of a closed diagram, in lexicographic order.
pub fn enumerate_colorings(d: &Diagram, q: &Quandle) -> Vec<Coloring> {
    let mut out = backtrack(d, q, &[]);
    out.sort();
    out
}

/// Boundary-monochromatic colorings of a tangle with boundary color x.
pub fn enumerate_tangle_colorings(d: &Diagram, q: &Quandle, x: Elem) -> Vec<Coloring> {
    let arcs = d
        .boundary_arcs()
        .expect("boundary-monochromatic colorings need a tangle");
    let fixed: Vec<(usize, Elem)> = arcs.iter().map(|&a| (a, x)).collect();
    let mut out = backtrack(d, q, &fixed);
    out.sort();
    out
}

fn backtrack(d: &Diagram, q: &Quandle, fixed: &[(usize, Elem)]) -> Vec<Coloring> {
    let rels = relations(d);
    let n = q.size() as Elem;
    let mut colors: Vec<Option<Elem>> = vec![None; d.arc_count];
    for &(arc, v) in fixed {
        if let Some(old) = colors[arc] {
            if old != v {
                return Vec::new();
            }
        }
        colors[arc] = Some(v);
    }
    let mut out = Vec::new();
    search(&rels, q, n, &mut colors, &mut out);
    out
}

fn propagate(
    rels: &[CrossingRelation],
    q: &Quandle,
    colors: &mut [Option<Elem>],
) -> bool {
    loop {
        let mut changed = false;
        for r in rels {
            let (ci, co, cu) = (colors[r.arc_in], colors[r.arc_over], colors[r.arc_out]);
            match (ci, co, cu) {
                (Some(a), Some(b), None) => {
                    let v = if r.positive { q.op(a, b) } else { q.unstar(a, b) };
                    colors[r.arc_out] = Some(v);
                    changed = true;
                }
                (None, Some(b), Some(c)) => {
                    let v = if r.positive { q.unstar(c, b) } else { q.op(c, b) };
                    colors[r.arc_in] = Some(v);
                    changed = true;
                }
                (Some(a), Some(b), Some(c)) => {
                    let v = if r.positive { q.op(a, b) } else { q.unstar(a, b) };
                    if v != c {
                        return false;
                    }
                }
                _ => {}
            }
        }
        if !changed {
            return true;
        }
    }
}

fn search(
    rels: &[CrossingRelation],
    q: &Quandle,
    n: Elem,
    colors: &mut Vec<Option<Elem>>,
    out: &mut Vec<Coloring>,
) {
    let snapshot = colors.clone();
    if !propagate(rels, q, colors) {
        *colors = snapshot;
        return;
    }
    match colors.iter().position(|c| c.is_none()) {
        None => out.push(colors.iter().map(|c| c.unwrap()).collect()),
        Some(arc) => {
            let propagated = colors.clone();
            for v in 0..n {
                *colors = propagated.clone();
                colors[arc] = Some(v);
                search(rels, q, n, colors, out);
            }
        }
    }
    *colors = snapshot;
}

/// Linear-system data for quandles of Alexander type. Prime dihedral
/// quandles use `t = -1` on `Z_p[t]/(t+1)`.
struct LinearModel {
    p: u64,
    d: usize,
    /// multiplication-by-t matrix, row-major d x d
    t_mat: Vec<u64>,
    /// multiplication by t^{-1}
    t_inv_mat: Vec<u64>,
}

fn linear_model(q: &Quandle) -> Option<LinearModel> {
    match q.kind() {
        QuandleKind::Alexander(ring) => {
            let p = ring.p() as u64;
            let d = ring.degree();
            let mut t_mat = vec![0u64; d * d];
            let mut t_inv_mat = vec![0u64; d * d];
            let t = ring.t();
            let ti = ring.t_inv();
            for j in 0..d {
                let mut basis = vec![0u16; d];
                basis[j] = 1;
                let b = ring.encode(&basis);
                let col_t = ring.decode(ring.mul(t, b));
                let col_ti = ring.decode(ring.mul(ti, b));
                for i in 0..d {
                    t_mat[i * d + j] = col_t[i] as u64;
                    t_inv_mat[i * d + j] = col_ti[i] as u64;
                }
            }
            Some(LinearModel {
                p,
                d,
                t_mat,
                t_inv_mat,
            })
        }
        QuandleKind::Dihedral(n) => {
            // i*j = 2j - i is t = -1 on Z_n; a field only for prime n
            let n = *n as u64;
            let mut x = 2;
            while x * x <= n {
                if n % x == 0 {
                    return None;
                }
                x += 1;
            }
            if n < 2 {
                return None;
            }
            Some(LinearModel {
                p: n,
                d: 1,
                t_mat: vec![n - 1],
                t_inv_mat: vec![n - 1],
            })
        }
        QuandleKind::Table => None,
    }
}

/// Colorings by Gaussian elimination over Z_p, componentwise on the
/// coefficient vectors. Returns `None` when the quandle has no linear
/// model (composite dihedral, explicit tables).
pub fn solve_linear_colorings(d: &Diagram, q: &Quandle) -> Option<Vec<Coloring>> {
    let model = linear_model(q)?;
    let vars = d.arc_count * model.d;
    let mut rows: Vec<Vec<u64>> = Vec::new();
    let p = model.p;
    for r in relations(d) {
        let tm = if r.positive {
            &model.t_mat
        } else {
            &model.t_inv_mat
        };
        // out = tm * in + (I - tm) * over
        for i in 0..model.d {
            let mut row = vec![0u64; vars];
            for j in 0..model.d {
                let c = tm[i * model.d + j];
                row[r.arc_in * model.d + j] = (row[r.arc_in * model.d + j] + c) % p;
                // (I - tm) over
                let idc = if i == j { 1 } else { 0 };
                row[r.arc_over * model.d + j] =
                    (row[r.arc_over * model.d + j] + idc + p - c) % p;
            }
            row[r.arc_out * model.d + i] = (row[r.arc_out * model.d + i] + p - 1) % p;
            rows.push(row);
        }
    }
    let kernel = kernel_basis(rows, vars, p);
    let total = (p as u128).checked_pow(kernel.len() as u32)?;
    if total > 20_000_000 {
        return None;
    }
    // enumerate the kernel
    let mut out = Vec::with_capacity(total as usize);
    let mut coeffs = vec![0u64; kernel.len()];
    let ring = q.ring().cloned();
    loop {
        let mut v = vec![0u64; vars];
        for (k, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                for (vi, b) in v.iter_mut().zip(&kernel[k]) {
                    *vi = (*vi + c * b) % p;
                }
            }
        }
        let mut coloring = Vec::with_capacity(d.arc_count);
        for arc in 0..d.arc_count {
            let comps: Vec<u16> = (0..model.d)
                .map(|i| v[arc * model.d + i] as u16)
                .collect();
            let e = match &ring {
                Some(ring) => ring.encode(&comps),
                None => comps[0] as Elem,
            };
            coloring.push(e);
        }
        out.push(coloring);
        // increment
        let mut k = 0;
        loop {
            if k == coeffs.len() {
                out.sort();
                return Some(out);
            }
            coeffs[k] += 1;
            if coeffs[k] < p {
                break;
            }
            coeffs[k] = 0;
            k += 1;
        }
    }
}

fn kernel_basis(mut rows: Vec<Vec<u64>>, vars: usize, p: u64) -> Vec<Vec<u64>> {
    let inv = |a: u64| -> u64 {
        // p prime
        let mut r = 1u64;
        let mut b = a % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    let mut pivot_col_of_row = Vec::new();
    let mut rank = 0usize;
    for col in 0..vars {
        let Some(pr) = (rank..rows.len()).find(|&r| rows[r][col] % p != 0) else {
            continue;
        };
        rows.swap(rank, pr);
        let s = inv(rows[rank][col]);
        for x in rows[rank].iter_mut() {
            *x = *x * s % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let f = rows[r][col];
                for cidx in 0..vars {
                    let sub = f * rows[rank][cidx] % p;
                    rows[r][cidx] = (rows[r][cidx] + p - sub) % p;
                }
            }
        }
        pivot_col_of_row.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    let pivot_cols: std::collections::HashSet<usize> = pivot_col_of_row.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..vars {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; vars];
        v[free] = 1;
        for (r, &pc) in pivot_col_of_row.iter().enumerate() {
            let c = rows[r][free] % p;
            if c != 0 {
                v[pc] = (p - c) % p;
            }
        }
        basis.push(v);
    }
    basis
}

/// Preferred enumeration: the linear route when available, otherwise
/// backtracking. Output order is lexicographic either way.
pub fn colorings(d: &Diagram, q: &Quandle) -> Vec<Coloring> {
    if d.boundary.is_none() {
        if let Some(sol) = solve_linear_colorings(d, q) {
            return sol;
        }
    }
    enumerate_colorings(d, q)
}

/// Extend an arc coloring to the diagram's regions, starting from
/// `base_face` colored `s`. Crossing an arc colored `y` along its
/// normal sends the region color `x` to `x * y`. The extension exists
/// and is unique for planar diagrams; inconsistency is an internal
/// error.
pub fn extend_region_coloring(
    d: &Diagram,
    q: &Quandle,
    colors: &[Elem],
    base_face: usize,
    s: Elem,
) -> Result<Vec<Elem>> {
    let faces = d.faces();
    let nf = faces.faces.len();
    let mut region: Vec<Option<Elem>> = vec![None; nf];
    region[base_face] = Some(s);
    let mut queue = std::collections::VecDeque::from([base_face]);
    while let Some(f) = queue.pop_front() {
        let fc = region[f].unwrap();
        for dart in &faces.faces[f].darts {
            let (left, right) = faces.edge_faces[dart.edge];
            let y = colors[d.edges[dart.edge].arc];
            // the arc's normal points from the right face to the left face
            let (other, val) = if f == left {
                (right, q.unstar(fc, y))
            } else {
                (left, q.op(fc, y))
            };
            match region[other] {
                None => {
                    region[other] = Some(val);
                    queue.push_back(other);
                }
                Some(existing) => {
                    if existing != val {
                        return Err(Error::Internal(format!(
                            "region colors conflict across edge {} of {}",
                            dart.edge, d.name
                        )));
                    }
                }
            }
        }
    }
    let mut out = Vec::with_capacity(nf);
    for (f, c) in region.into_iter().enumerate() {
        match c {
            Some(v) => out.push(v),
            None => {
                if Some(f) == faces.outer {
                    out.push(0);
                } else {
                    return Err(Error::Internal(format!(
                        "region {f} of {} unreachable from the base face",
                        d.name
                    )));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::{BraidWord, Tangle};

    fn brute_force(d: &Diagram, q: &Quandle) -> Vec<Coloring> {
        let n = q.size() as Elem;
        let arcs = d.arc_count;
        let mut out = Vec::new();
        let mut cur = vec![0 as Elem; arcs];
        loop {
            if check_coloring(d, q, &cur) {
                out.push(cur.clone());
            }
            let mut k = 0;
            loop {
                if k == arcs {
                    out.sort();
                    return out;
                }
                cur[k] += 1;
                if cur[k] < n {
                    break;
                }
                cur[k] = 0;
                k += 1;
            }
        }
    }

    #[test]
    fn trefoil_r3_has_nine() {
        let d = BraidWord::parse("2 1 1 1").unwrap().close("3_1").unwrap();
        let q = Quandle::dihedral(3);
        let got = enumerate_colorings(&d, &q);
        assert_eq!(got.len(), 9);
        assert_eq!(got, brute_force(&d, &q));
    }

    #[test]
    fn figure_eight_r3_constants_only() {
        let d = BraidWord::parse("3 1 -2 1 -2").unwrap().close("4_1").unwrap();
        let q = Quandle::dihedral(3);
        let got = enumerate_colorings(&d, &q);
        assert_eq!(got.len(), 3);
        assert!(got.iter().all(|c| c.iter().all(|&v| v == c[0])));
    }

    #[test]
    fn figure_eight_r5_colorful() {
        let d = BraidWord::parse("3 1 -2 1 -2").unwrap().close("4_1").unwrap();
        let q = Quandle::dihedral(5);
        assert_eq!(enumerate_colorings(&d, &q).len(), 25);
    }

    #[test]
    fn trefoil_f4_sixteen() {
        let d = BraidWord::parse("2 1 1 1").unwrap().close("3_1").unwrap();
        let q = Quandle::from_spec("alexander:2:t^2+t+1").unwrap();
        assert_eq!(enumerate_colorings(&d, &q).len(), 16);
    }

    #[test]
    fn linear_matches_backtracking() {
        let diagrams = [
            BraidWord::parse("2 1 1 1").unwrap().close("3_1").unwrap(),
            BraidWord::parse("3 1 -2 1 -2").unwrap().close("4_1").unwrap(),
            Tangle::rational(&[3, 1, 2]).unwrap().numerator_auto("6_2").unwrap(),
        ];
        let quandles = [
            Quandle::dihedral(3),
            Quandle::dihedral(5),
            Quandle::from_spec("alexander:2:t^2+t+1").unwrap(),
            Quandle::from_spec("alexander:3:t^2-t+1").unwrap(),
        ];
        for d in &diagrams {
            for q in &quandles {
                let a = enumerate_colorings(d, q);
                let b = solve_linear_colorings(d, q).unwrap();
                assert_eq!(a, b, "{} over {}", d.name, q.label());
            }
        }
    }

    #[test]
    fn trefoil_alexander_p3_81() {
        let d = BraidWord::parse("2 1 1 1").unwrap().close("3_1").unwrap();
        let q = Quandle::from_spec("alexander:3:t^2-t+1").unwrap();
        assert_eq!(solve_linear_colorings(&d, &q).unwrap().len(), 81);
    }

    #[test]
    fn every_emitted_coloring_checks() {
        let d = Tangle::rational(&[2, 1, 2]).unwrap().numerator_auto("k").unwrap();
        let q = Quandle::dihedral(7);
        for c in enumerate_colorings(&d, &q) {
            assert!(check_coloring(&d, &q, &c));
        }
    }

    #[test]
    fn tangle_boundary_monochromatic() {
        // trivial tangle: exactly one coloring per boundary color
        let t = Tangle::zero().finalize("0").unwrap();
        let q = Quandle::dihedral(5);
        for x in 0..5 {
            let cols = enumerate_tangle_colorings(&t, &q, x);
            assert_eq!(cols.len(), 1);
            assert!(cols[0].iter().all(|&v| v == x));
        }
    }

    #[test]
    fn unlink_coloring_count() {
        let k = Tangle::zero().numerator_auto("unlink").unwrap();
        let q = Quandle::dihedral(3);
        assert_eq!(enumerate_colorings(&k, &q).len(), 9); // |X|^2
    }

    #[test]
    fn region_extension_unique_and_counted() {
        let d = BraidWord::parse("2 1 1 1").unwrap().close("3_1").unwrap();
        let q = Quandle::from_spec("alexander:2:t^2+t+1").unwrap();
        let cols = enumerate_colorings(&d, &q);
        assert_eq!(cols.len(), 16);
        let mut extensions = 0;
        for c in &cols {
            for s in 0..4 {
                let r = extend_region_coloring(&d, &q, c, 0, s).unwrap();
                assert_eq!(r.len(), d.faces().faces.len());
                extensions += 1;
            }
        }
        assert_eq!(extensions, 64);
    }

    #[test]
    fn region_extension_constant_rule() {
        // constant coloring a: the face across an arc colored a from a
        // face colored s gets s*a or unstar(s,a)
        let d = BraidWord::parse("2 1 1 1").unwrap().close("3_1").unwrap();
        let q = Quandle::dihedral(3);
        let colors = vec![1 as Elem; d.arc_count];
        let r = extend_region_coloring(&d, &q, &colors, 0, 2).unwrap();
        let (left, right) = d.faces().edge_faces[0];
        let (l, rr) = (r[left], r[right]);
        assert_eq!(q.op(rr, 1), l);
    }
}
