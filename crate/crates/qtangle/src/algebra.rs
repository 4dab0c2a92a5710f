//! Finite quandles and their coefficient groups.
//!
//! A quandle is a set with a binary operation `*` satisfying
//!
//! 1. `a * a = a`,
//! 2. for each `b` the map `a -> a * b` is a bijection,
//! 3. `(a * b) * c = (a * c) * (b * c)`.
//!
//! Two families are provided: dihedral quandles `R_n` on `Z_n` with
//! `i * j = 2j - i`, and Alexander quandles on the ring `Z_p[t]/(h)`
//! with `a * b = t a + (1 - t) b`. Elements are dense indices
//! `0..n-1`; Alexander elements encode coefficient vectors in base `p`
//! with the constant term least significant, so tables index in O(1)
//! and printing is deterministic.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Element of a quandle or coefficient group, as a dense index.
pub type Elem = u16;

fn is_prime(p: u16) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p as u32 {
        if p as u32 % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The finite ring `Z_p[t]/(h)` for a monic polynomial `h` with
/// `h(0) != 0`, so `t` is a unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlexanderRing {
    p: u16,
    /// Coefficients `h[0] + h[1] t + ... + h[d] t^d`, monic, reduced mod p.
    h: Vec<u16>,
}

impl AlexanderRing {
    pub fn new(p: u16, mut h: Vec<i64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidQuandle(format!("modulus {p} is not prime")));
        }
        while h.len() > 1 && h.last() == Some(&0) {
            h.pop();
        }
        if h.len() < 2 {
            return Err(Error::InvalidQuandle("h must have degree >= 1".into()));
        }
        let hp: Vec<u16> = h
            .iter()
            .map(|&c| (c.rem_euclid(p as i64)) as u16)
            .collect();
        if *hp.last().unwrap() != 1 {
            return Err(Error::InvalidQuandle(format!(
                "h must be monic mod {p}: {hp:?}"
            )));
        }
        if hp[0] == 0 {
            return Err(Error::InvalidQuandle(
                "h(0) = 0 mod p, so t is not invertible".into(),
            ));
        }
        Ok(AlexanderRing { p, h: hp })
    }

    pub fn parse(p: u16, poly: &str) -> Result<Self> {
        AlexanderRing::new(p, parse_t_poly(poly)?)
    }

    pub fn p(&self) -> u16 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.h.len() - 1
    }

    pub fn size(&self) -> usize {
        (self.p as usize).pow(self.degree() as u32)
    }

    pub fn decode(&self, e: Elem) -> Vec<u16> {
        let mut v = Vec::with_capacity(self.degree());
        let mut rest = e as usize;
        for _ in 0..self.degree() {
            v.push((rest % self.p as usize) as u16);
            rest /= self.p as usize;
        }
        v
    }

    pub fn encode(&self, coeffs: &[u16]) -> Elem {
        debug_assert!(coeffs.len() == self.degree());
        let mut e = 0usize;
        for &c in coeffs.iter().rev() {
            debug_assert!(c < self.p);
            e = e * self.p as usize + c as usize;
        }
        e as Elem
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn one(&self) -> Elem {
        1
    }

    /// The class of `t` itself (reduced when `h` has degree 1).
    pub fn t(&self) -> Elem {
        if self.degree() == 1 {
            self.scalar(-(self.h[0] as i64))
        } else {
            self.p
        }
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let (va, vb) = (self.decode(a), self.decode(b));
        let v: Vec<u16> = va
            .iter()
            .zip(&vb)
            .map(|(x, y)| (x + y) % self.p)
            .collect();
        self.encode(&v)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let v: Vec<u16> = self
            .decode(a)
            .iter()
            .map(|&x| (self.p - x) % self.p)
            .collect();
        self.encode(&v)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        let d = self.degree();
        let (va, vb) = (self.decode(a), self.decode(b));
        let mut prod = vec![0u32; 2 * d];
        for (i, &x) in va.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in vb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u32 * y as u32) % self.p as u32;
            }
        }
        // reduce: t^d = -(h[0] + ... + h[d-1] t^{d-1})
        for k in (d..2 * d).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for j in 0..d {
                let sub = c * self.h[j] as u32 % self.p as u32;
                prod[k - d + j] = (prod[k - d + j] + self.p as u32 - sub) % self.p as u32;
            }
        }
        let v: Vec<u16> = prod[..d].iter().map(|&x| x as u16).collect();
        self.encode(&v)
    }

    /// Multiplicative inverse of `t`, using `t (h1 + h2 t + ... + t^{d-1}) = -h0`.
    pub fn t_inv(&self) -> Elem {
        let d = self.degree();
        let h0_inv = mod_inv(self.h[0], self.p);
        let scale = (self.p - h0_inv) % self.p;
        let v: Vec<u16> = (0..d)
            .map(|j| (self.h[j + 1] as u32 * scale as u32 % self.p as u32) as u16)
            .collect();
        self.encode(&v)
    }

    pub fn scalar(&self, k: i64) -> Elem {
        let c = k.rem_euclid(self.p as i64) as u16;
        let mut v = vec![0u16; self.degree()];
        v[0] = c;
        self.encode(&v)
    }

    pub fn pow(&self, a: Elem, k: u32) -> Elem {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn format_elem(&self, e: Elem) -> String {
        let v = self.decode(e);
        let mut out = String::new();
        for (pow, &c) in v.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push('+');
            }
            match pow {
                0 => out.push_str(&c.to_string()),
                1 => {
                    if c != 1 {
                        out.push_str(&c.to_string());
                    }
                    out.push('t');
                }
                _ => {
                    if c != 1 {
                        out.push_str(&c.to_string());
                    }
                    out.push_str(&format!("t^{pow}"));
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn parse_elem(&self, s: &str) -> Result<Elem> {
        let coeffs = parse_t_poly(s)?;
        if coeffs.len() > self.degree() && coeffs[self.degree()..].iter().any(|&c| c != 0) {
            // reduce higher powers via ring arithmetic
            let mut acc = self.zero();
            let t = self.t();
            for (pow, &c) in coeffs.iter().enumerate() {
                let term = self.mul(self.scalar(c), self.pow(t, pow as u32));
                acc = self.add(acc, term);
            }
            return Ok(acc);
        }
        let mut v = vec![0u16; self.degree()];
        for (pow, &c) in coeffs.iter().enumerate() {
            if pow < v.len() {
                v[pow] = c.rem_euclid(self.p as i64) as u16;
            }
        }
        Ok(self.encode(&v))
    }

    pub fn h_string(&self) -> String {
        let mut parts = Vec::new();
        for (pow, &c) in self.h.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let t = match pow {
                0 => c.to_string(),
                1 => {
                    if c == 1 {
                        "t".into()
                    } else {
                        format!("{c}t")
                    }
                }
                _ => {
                    if c == 1 {
                        format!("t^{pow}")
                    } else {
                        format!("{c}t^{pow}")
                    }
                }
            };
            parts.push(t);
        }
        parts.join("+")
    }
}

fn mod_inv(a: u16, p: u16) -> u16 {
    // p prime, a != 0 mod p
    let mut r = 1u32;
    let mut base = a as u32 % p as u32;
    let mut e = p as u32 - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p as u32;
        }
        base = base * base % p as u32;
        e >>= 1;
    }
    r as u16
}

/// Parse an integer polynomial in `t`, e.g. `t^2-t+1` or `2t+3`.
pub fn parse_t_poly(s: &str) -> Result<Vec<i64>> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let bytes = s.as_bytes();
    let mut coeffs: Vec<i64> = Vec::new();
    let mut i = 0usize;
    let mut sign = 1i64;
    // leading sign
    if bytes[0] == b'+' || bytes[0] == b'-' {
        sign = if bytes[0] == b'-' { -1 } else { 1 };
        i = 1;
    }
    loop {
        // term: [digits] ['t' ['^' digits]]
        let start = i;
        let mut coef: Option<i64> = None;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        if i > start {
            coef = Some(
                s[start..i]
                    .parse::<i64>()
                    .map_err(|e| Error::Parse(format!("bad coefficient in '{s}': {e}")))?,
            );
        }
        let mut pow = 0usize;
        if i < bytes.len() && bytes[i] == b't' {
            i += 1;
            pow = 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let ps = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i == ps {
                    return Err(Error::Parse(format!("missing exponent in '{s}'")));
                }
                pow = s[ps..i]
                    .parse()
                    .map_err(|e| Error::Parse(format!("bad exponent in '{s}': {e}")))?;
            }
        } else if coef.is_none() {
            return Err(Error::Parse(format!("unexpected character in '{s}' at {i}")));
        }
        let c = sign * coef.unwrap_or(1);
        if coeffs.len() <= pow {
            coeffs.resize(pow + 1, 0);
        }
        coeffs[pow] += c;
        if i == bytes.len() {
            break;
        }
        match bytes[i] {
            b'+' => sign = 1,
            b'-' => sign = -1,
            _ => {
                return Err(Error::Parse(format!(
                    "expected + or - in '{s}' at position {i}"
                )))
            }
        }
        i += 1;
    }
    Ok(coeffs)
}

/// A finite abelian coefficient group: `Z_m`, or the additive group of
/// an Alexander ring (printed in the `t`-polynomial form, e.g. `2t+2`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AbelianGroup {
    Cyclic(u16),
    Ring(AlexanderRing),
}

impl AbelianGroup {
    pub fn order(&self) -> usize {
        match self {
            AbelianGroup::Cyclic(m) => *m as usize,
            AbelianGroup::Ring(r) => r.size(),
        }
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match self {
            AbelianGroup::Cyclic(m) => ((a as u32 + b as u32) % *m as u32) as Elem,
            AbelianGroup::Ring(r) => r.add(a, b),
        }
    }

    pub fn neg(&self, a: Elem) -> Elem {
        match self {
            AbelianGroup::Cyclic(m) => ((*m as u32 - a as u32) % *m as u32) as Elem,
            AbelianGroup::Ring(r) => r.neg(a),
        }
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn format_elem(&self, e: Elem) -> String {
        match self {
            AbelianGroup::Cyclic(_) => e.to_string(),
            AbelianGroup::Ring(r) => r.format_elem(e),
        }
    }

    pub fn parse_elem(&self, s: &str) -> Result<Elem> {
        match self {
            AbelianGroup::Cyclic(m) => {
                let v: i64 = s
                    .trim()
                    .parse()
                    .map_err(|e| Error::Parse(format!("bad group element '{s}': {e}")))?;
                Ok(v.rem_euclid(*m as i64) as Elem)
            }
            AbelianGroup::Ring(r) => r.parse_elem(s),
        }
    }

    pub fn label(&self) -> String {
        match self {
            AbelianGroup::Cyclic(m) => format!("Z{m}"),
            AbelianGroup::Ring(r) => format!("Z{}[t]/({})", r.p(), r.h_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuandleKind {
    Dihedral(u16),
    Alexander(AlexanderRing),
    Table,
}

/// A finite quandle with precomputed operation and inverse tables.
#[derive(Clone, Debug)]
pub struct Quandle {
    label: String,
    n: usize,
    op: Vec<Elem>,
    inv: Vec<Elem>,
    kind: QuandleKind,
}

/// Result of checking the three quandle axioms on an operation table.
/// Failures are reported with a witness tuple, not as errors.
#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    pub idempotence: Option<Elem>,
    pub right_invertibility: Option<(Elem, Elem)>,
    pub distributivity: Option<(Elem, Elem, Elem)>,
}

impl AxiomReport {
    pub fn pass(&self) -> bool {
        self.idempotence.is_none()
            && self.right_invertibility.is_none()
            && self.distributivity.is_none()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pass() {
            return write!(f, "axioms I-III: pass");
        }
        if let Some(a) = self.idempotence {
            writeln!(f, "axiom I fails: {a}*{a} != {a}")?;
        }
        if let Some((a, b)) = self.right_invertibility {
            writeln!(f, "axiom II fails: column {b} not injective near a={a}")?;
        }
        if let Some((a, b, c)) = self.distributivity {
            writeln!(f, "axiom III fails at (a,b,c)=({a},{b},{c})")?;
        }
        Ok(())
    }
}

/// Exhaustive check of the quandle axioms on a raw table.
pub fn verify_quandle_axioms(n: usize, op: &[Elem]) -> AxiomReport {
    let mut report = AxiomReport::default();
    let at = |a: usize, b: usize| op[a * n + b] as usize;
    for a in 0..n {
        if at(a, a) != a {
            report.idempotence.get_or_insert(a as Elem);
        }
    }
    'cols: for b in 0..n {
        let mut seen = vec![false; n];
        for a in 0..n {
            let v = at(a, b);
            if seen[v] {
                report.right_invertibility.get_or_insert((a as Elem, b as Elem));
                break 'cols;
            }
            seen[v] = true;
        }
    }
    'dist: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if at(at(a, b), c) != at(at(a, c), at(b, c)) {
                    report
                        .distributivity
                        .get_or_insert((a as Elem, b as Elem, c as Elem));
                    break 'dist;
                }
            }
        }
    }
    report
}

impl Quandle {
    fn build(label: String, n: usize, op: Vec<Elem>, kind: QuandleKind) -> Result<Arc<Quandle>> {
        let report = verify_quandle_axioms(n, &op);
        if !report.pass() {
            return Err(Error::InvalidQuandle(format!("{label}: {report}")));
        }
        let mut inv = vec![0 as Elem; n * n];
        for b in 0..n {
            for a in 0..n {
                // op[a][b] = v  =>  unstar(v, b) = a
                let v = op[a * n + b] as usize;
                inv[v * n + b] = a as Elem;
            }
        }
        Ok(Arc::new(Quandle {
            label,
            n,
            op,
            inv,
            kind,
        }))
    }

    /// Dihedral quandle `R_n`: `i * j = 2j - i mod n`.
    pub fn dihedral(n: u16) -> Arc<Quandle> {
        assert!(n >= 1);
        let size = n as usize;
        let mut op = vec![0 as Elem; size * size];
        for a in 0..size {
            for b in 0..size {
                op[a * size + b] = ((2 * b + size - a) % size) as Elem;
            }
        }
        Quandle::build(format!("R{n}"), size, op, QuandleKind::Dihedral(n))
            .expect("dihedral quandles satisfy the axioms")
    }

    /// Alexander quandle on `Z_p[t]/(h)`: `a * b = t a + (1-t) b`.
    pub fn alexander(ring: AlexanderRing) -> Result<Arc<Quandle>> {
        let n = ring.size();
        let t = ring.t();
        let one_minus_t = ring.sub(ring.one(), t);
        let mut op = vec![0 as Elem; n * n];
        for a in 0..n {
            let ta = ring.mul(t, a as Elem);
            for b in 0..n {
                op[a * n + b] = ring.add(ta, ring.mul(one_minus_t, b as Elem));
            }
        }
        let label = format!("Z{}[t]/({})", ring.p(), ring.h_string());
        Quandle::build(label, n, op, QuandleKind::Alexander(ring))
    }

    /// Quandle from an explicit Cayley table; the axioms are verified.
    pub fn from_table(label: &str, n: usize, op: Vec<Elem>) -> Result<Arc<Quandle>> {
        if op.len() != n * n || op.iter().any(|&e| e as usize >= n) {
            return Err(Error::InvalidQuandle(format!(
                "{label}: table must be {n}x{n} with entries in 0..{n}"
            )));
        }
        Quandle::build(label.to_string(), n, op, QuandleKind::Table)
    }

    /// Builder from a spec string: `dihedral:<n>` or `alexander:<p>:<h>`.
    pub fn from_spec(spec: &str) -> Result<Arc<Quandle>> {
        let parts: Vec<&str> = spec.split(':').collect();
        match parts.as_slice() {
            ["dihedral", n] => {
                let n: u16 = n
                    .parse()
                    .map_err(|e| Error::Parse(format!("bad dihedral order '{n}': {e}")))?;
                if n == 0 {
                    return Err(Error::InvalidQuandle("dihedral order must be >= 1".into()));
                }
                Ok(Quandle::dihedral(n))
            }
            ["alexander", p, h] => {
                let p: u16 = p
                    .parse()
                    .map_err(|e| Error::Parse(format!("bad prime '{p}': {e}")))?;
                Quandle::alexander(AlexanderRing::parse(p, h)?)
            }
            _ => Err(Error::Parse(format!(
                "quandle spec '{spec}' (expected dihedral:<n> or alexander:<p>:<h>)"
            ))),
        }
    }

    /// Canonical spec string for this quandle, if it has one.
    pub fn spec_string(&self) -> String {
        match &self.kind {
            QuandleKind::Dihedral(n) => format!("dihedral:{n}"),
            QuandleKind::Alexander(r) => format!("alexander:{}:{}", r.p(), r.h_string()),
            QuandleKind::Table => format!("table:{}", self.label),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn op(&self, a: Elem, b: Elem) -> Elem {
        self.op[a as usize * self.n + b as usize]
    }

    /// The unique `c` with `c * b = a`.
    #[inline]
    pub fn unstar(&self, a: Elem, b: Elem) -> Elem {
        self.inv[a as usize * self.n + b as usize]
    }

    pub fn kind(&self) -> &QuandleKind {
        &self.kind
    }

    pub fn ring(&self) -> Option<&AlexanderRing> {
        match &self.kind {
            QuandleKind::Alexander(r) => Some(r),
            _ => None,
        }
    }

    pub fn verify(&self) -> AxiomReport {
        verify_quandle_axioms(self.n, &self.op)
    }

    /// The additive group the bundled cocycles over this quandle use.
    pub fn default_group(&self) -> AbelianGroup {
        match &self.kind {
            QuandleKind::Dihedral(n) => AbelianGroup::Cyclic(*n),
            QuandleKind::Alexander(r) => AbelianGroup::Ring(r.clone()),
            QuandleKind::Table => AbelianGroup::Cyclic(self.n as u16),
        }
    }

    /// Cayley-table text format: `quandle <name> <n>` then n rows.
    pub fn to_text(&self) -> String {
        let mut s = format!("quandle {} {}\n", self.label.replace(' ', "_"), self.n);
        for a in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|b| self.op[a * self.n + b].to_string())
                .collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Arc<Quandle>> {
        let mut lines = text.lines().enumerate();
        let (ln, header) = lines
            .next()
            .ok_or_else(|| Error::Parse("empty quandle text".into()))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 3 || parts[0] != "quandle" {
            return Err(Error::ParseAt {
                line: ln + 1,
                msg: "expected 'quandle <name> <n>'".into(),
            });
        }
        let name = parts[1];
        let n: usize = parts[2].parse().map_err(|e| Error::ParseAt {
            line: ln + 1,
            msg: format!("bad size: {e}"),
        })?;
        let mut op = Vec::with_capacity(n * n);
        for _ in 0..n {
            let (ln, row) = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("expected {n} rows")))?;
            for tok in row.split_whitespace() {
                let v: Elem = tok.parse().map_err(|e| Error::ParseAt {
                    line: ln + 1,
                    msg: format!("bad entry '{tok}': {e}"),
                })?;
                op.push(v);
            }
        }
        Quandle::from_table(name, n, op)
    }
}

impl PartialEq for Quandle {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.op == other.op
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_small_values() {
        let q = Quandle::dihedral(3);
        assert_eq!(q.op(0, 1), 2);
        assert_eq!(q.op(2, 2), 2);
        assert!(q.verify().pass());
    }

    #[test]
    fn dihedral_axioms_hold() {
        for n in [1u16, 2, 3, 5, 7, 9] {
            assert!(Quandle::dihedral(n).verify().pass(), "R_{n}");
        }
    }

    #[test]
    fn alexander_f4() {
        let ring = AlexanderRing::parse(2, "t^2+t+1").unwrap();
        let q = Quandle::alexander(ring.clone()).unwrap();
        assert_eq!(q.size(), 4);
        // 1 * t = t+1 in Z_2[t]/(t^2+t+1)
        let one = ring.one();
        let t = ring.t();
        let t_plus_1 = ring.parse_elem("t+1").unwrap();
        assert_eq!(q.op(one, t), t_plus_1);
        assert!(q.verify().pass());
        // unstar inverts the example
        assert_eq!(q.unstar(t_plus_1, t), one);
    }

    #[test]
    fn alexander_sizes() {
        let q = Quandle::from_spec("alexander:3:t^2-t+1").unwrap();
        assert_eq!(q.size(), 9);
        assert!(q.verify().pass());
        let q = Quandle::from_spec("alexander:5:t^2-t+1").unwrap();
        assert_eq!(q.size(), 25);
        let q = Quandle::from_spec("alexander:7:t^2-t+1").unwrap();
        assert_eq!(q.size(), 49);
    }

    #[test]
    fn broken_table_reports_witness() {
        // op[0][0] = 1 breaks axiom I
        let mut op = vec![0, 1, 2, 2, 1, 0, 1, 2, 0]; // junk 3x3
        op[0] = 1;
        let report = verify_quandle_axioms(3, &op);
        assert!(!report.pass());
        assert_eq!(report.idempotence, Some(0));
    }

    #[test]
    fn unstar_round_trip() {
        let q = Quandle::from_spec("alexander:2:t^2+t+1").unwrap();
        let n = q.size() as Elem;
        for a in 0..n {
            for b in 0..n {
                assert_eq!(q.unstar(q.op(a, b), b), a);
                assert_eq!(q.op(q.unstar(a, b), b), a);
            }
        }
    }

    #[test]
    fn dihedral_unstar_example() {
        let q = Quandle::dihedral(3);
        assert_eq!(q.unstar(2, 1), 0); // 0*1 = 2
    }

    #[test]
    fn dihedral_is_alexander_t_plus_one() {
        for p in [3u16, 5, 7] {
            let d = Quandle::dihedral(p);
            let a = Quandle::from_spec(&format!("alexander:{p}:t+1")).unwrap();
            assert_eq!(d.as_ref(), a.as_ref(), "R_{p} vs Z_{p}[t]/(t+1)");
        }
    }

    #[test]
    fn codec_round_trip() {
        let ring = AlexanderRing::parse(3, "t^2-t+1").unwrap();
        for e in 0..ring.size() as Elem {
            assert_eq!(ring.encode(&ring.decode(e)), e);
        }
    }

    #[test]
    fn ring_t_inverse() {
        for (p, h) in [(2u16, "t^2+t+1"), (3, "t^2-t+1"), (5, "t^2-t+1"), (7, "t+1")] {
            let ring = AlexanderRing::parse(p, h).unwrap();
            assert_eq!(ring.mul(ring.t(), ring.t_inv()), ring.one(), "{p} {h}");
        }
    }

    #[test]
    fn element_formatting() {
        let ring = AlexanderRing::parse(3, "t^2-t+1").unwrap();
        let e = ring.parse_elem("2t+2").unwrap();
        assert_eq!(ring.format_elem(e), "2t+2");
        assert_eq!(ring.format_elem(ring.zero()), "0");
        assert_eq!(ring.format_elem(ring.t()), "t");
        let rt = ring.parse_elem(&ring.format_elem(7)).unwrap();
        assert_eq!(rt, 7);
    }

    #[test]
    fn rejects_bad_presentations() {
        assert!(AlexanderRing::parse(4, "t+1").is_err()); // not prime
        assert!(AlexanderRing::parse(2, "t^2+t").is_err()); // h(0) = 0
        assert!(AlexanderRing::parse(3, "2t^2+1").is_err()); // not monic
    }

    #[test]
    fn cayley_text_round_trip() {
        let q = Quandle::dihedral(5);
        let text = q.to_text();
        let q2 = Quandle::from_text(&text).unwrap();
        assert_eq!(q.as_ref(), q2.as_ref());
    }
}
