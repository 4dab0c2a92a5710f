//! Construction of diagrams: braid closures, twist regions, rational
//! tangles, tangle addition/stacking, rotation, mirroring, closures.
//!
//! During construction a crossing stores only its sign; connectivity
//! lives entirely in directed edges whose ends name crossing ports by
//! strand role (under-in, under-out, over-in, over-out). Reversing a
//! strand or mirroring a crossing is then a local relabeling, and the
//! counterclockwise slot order is derived from the sign at finalize
//! time: positive crossings read (under-in, over-out, under-out,
//! over-in), negative ones (under-in, over-in, under-out, over-out).

use super::*;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Role {
    UnderIn,
    UnderOut,
    OverIn,
    OverOut,
}

impl Role {
    fn is_in(self) -> bool {
        matches!(self, Role::UnderIn | Role::OverIn)
    }

    fn partner(self) -> Role {
        match self {
            Role::UnderIn => Role::UnderOut,
            Role::UnderOut => Role::UnderIn,
            Role::OverIn => Role::OverOut,
            Role::OverOut => Role::OverIn,
        }
    }

    fn slot(self, sign: i8) -> usize {
        match (sign > 0, self) {
            (_, Role::UnderIn) => 0,
            (_, Role::UnderOut) => 2,
            (true, Role::OverOut) | (false, Role::OverIn) => 1,
            (true, Role::OverIn) | (false, Role::OverOut) => 3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum BEnd {
    Port { c: usize, role: Role },
    Corner(u8),
}

#[derive(Clone, Debug)]
struct BEdge {
    tail: BEnd,
    head: BEnd,
}

/// A tangle (or closed diagram) under construction.
#[derive(Clone, Debug)]
pub struct Tangle {
    signs: Vec<i8>,
    edges: Vec<Option<BEdge>>,
    free_loops: usize,
}

const PENDING: u8 = 254;

impl Tangle {
    fn empty() -> Tangle {
        Tangle {
            signs: Vec::new(),
            edges: Vec::new(),
            free_loops: 0,
        }
    }

    /// The 0-tangle: two horizontal strands NW->NE and SW->SE.
    pub fn zero() -> Tangle {
        let mut t = Tangle::empty();
        t.new_edge(BEnd::Corner(NW as u8), BEnd::Corner(NE as u8));
        t.new_edge(BEnd::Corner(SW as u8), BEnd::Corner(SE as u8));
        t
    }

    /// Single-crossing tangle. Positive: the NW->SE strand passes over.
    pub fn crossing(sign: i8) -> Tangle {
        debug_assert!(sign == 1 || sign == -1);
        let mut t = Tangle::empty();
        let c = t.new_crossing(sign);
        let (under_from, under_to, over_from, over_to) = if sign < 0 {
            (NW, SE, SW, NE)
        } else {
            (SW, NE, NW, SE)
        };
        t.new_edge(
            BEnd::Corner(under_from as u8),
            BEnd::Port { c, role: Role::UnderIn },
        );
        t.new_edge(
            BEnd::Port { c, role: Role::UnderOut },
            BEnd::Corner(under_to as u8),
        );
        t.new_edge(
            BEnd::Corner(over_from as u8),
            BEnd::Port { c, role: Role::OverIn },
        );
        t.new_edge(
            BEnd::Port { c, role: Role::OverOut },
            BEnd::Corner(over_to as u8),
        );
        t
    }

    /// Horizontal twist region with |n| crossings of sign(n).
    pub fn htwist(n: i32) -> Tangle {
        let mut t = Tangle::zero();
        let s = if n >= 0 { 1 } else { -1 };
        for _ in 0..n.unsigned_abs() {
            t = Tangle::add(t, Tangle::crossing(s)).expect("twist rows always glue");
        }
        t
    }

    /// Vertical twist column: the horizontal region rotated 90 degrees.
    pub fn vtwist(n: i32) -> Tangle {
        Tangle::htwist(n).rotated()
    }

    /// Conway rational tangle: odd entries add horizontal twists on the
    /// right, even entries stack vertical twists below.
    pub fn rational(parts: &[i32]) -> Result<Tangle> {
        let mut t = Tangle::zero();
        for (i, &a) in parts.iter().enumerate() {
            t = if i % 2 == 0 {
                Tangle::add(t, Tangle::htwist(a))?
            } else {
                Tangle::stack(t, Tangle::vtwist(a))?
            };
        }
        Ok(t)
    }

    fn new_crossing(&mut self, sign: i8) -> usize {
        self.signs.push(sign);
        self.signs.len() - 1
    }

    fn new_edge(&mut self, tail: BEnd, head: BEnd) -> usize {
        self.edges.push(Some(BEdge { tail, head }));
        self.edges.len() - 1
    }

    fn find_corner(&self, corner: u8) -> Result<(usize, bool)> {
        for (i, e) in self.edges.iter().enumerate() {
            if let Some(e) = e {
                if e.head == BEnd::Corner(corner) {
                    return Ok((i, true));
                }
                if e.tail == BEnd::Corner(corner) {
                    return Ok((i, false));
                }
            }
        }
        Err(Error::Internal(format!("corner {corner} is not attached")))
    }

    fn find_port(&self, c: usize, role: Role) -> Option<(usize, bool)> {
        let want = BEnd::Port { c, role };
        for (i, e) in self.edges.iter().enumerate() {
            if let Some(e) = e {
                if e.head == want {
                    return Some((i, true));
                }
                if e.tail == want {
                    return Some((i, false));
                }
            }
        }
        None
    }

    /// Offset another tangle's indices into self, relabeling its
    /// corners to 4..8, and return nothing (corners merged by caller).
    fn absorb(&mut self, other: Tangle) {
        let coff = self.signs.len();
        self.signs.extend(other.signs);
        self.free_loops += other.free_loops;
        let shift = |end: BEnd| match end {
            BEnd::Port { c, role } => BEnd::Port { c: c + coff, role },
            BEnd::Corner(k) if k < 4 => BEnd::Corner(k + 4),
            BEnd::Corner(k) => BEnd::Corner(k),
        };
        for e in other.edges.into_iter().flatten() {
            self.edges.push(Some(BEdge {
                tail: shift(e.tail),
                head: shift(e.head),
            }));
        }
    }

    fn relabel_corner(&mut self, from: u8, to: u8) {
        for e in self.edges.iter_mut().flatten() {
            if e.tail == BEnd::Corner(from) {
                e.tail = BEnd::Corner(to);
            }
            if e.head == BEnd::Corner(from) {
                e.head = BEnd::Corner(to);
            }
        }
    }

    /// Join the strand ends at two corners. With `strict`, refuses when
    /// the orientations disagree; otherwise reverses one strand.
    fn sew(&mut self, ca: u8, cb: u8, strict: bool) -> Result<()> {
        let (ea, a_head) = self.find_corner(ca)?;
        let (eb, b_head) = self.find_corner(cb)?;
        if a_head == b_head {
            if strict {
                return Err(Error::Orientation(format!(
                    "cannot join {} to {}: both ends flow the same way",
                    corner_name(ca),
                    corner_name(cb)
                )));
            }
            self.reverse_strand(eb);
            return self.sew(ca, cb, true);
        }
        let (e_in, e_out) = if a_head { (ea, eb) } else { (eb, ea) };
        // e_in's head and e_out's tail meet at the junction
        if e_in == e_out {
            self.edges[e_in] = None;
            self.free_loops += 1;
            return Ok(());
        }
        let out_head = self.edges[e_out].as_ref().unwrap().head;
        self.edges[e_in].as_mut().unwrap().head = out_head;
        self.edges[e_out] = None;
        Ok(())
    }

    /// Walk the whole strand containing `seed` and reverse its
    /// orientation, flipping the sign of every crossing it passes once.
    fn reverse_strand(&mut self, seed: usize) {
        let mut strand = vec![seed];
        let mut passes: Vec<(usize, bool)> = Vec::new(); // (crossing, under?)
        let mut closed = false;
        // forward from the head
        let mut e = seed;
        loop {
            let head = self.edges[e].as_ref().unwrap().head;
            match head {
                BEnd::Corner(_) => break,
                BEnd::Port { c, role } => {
                    debug_assert!(role.is_in());
                    passes.push((c, role == Role::UnderIn));
                    let (nxt, nxt_is_head) = self
                        .find_port(c, role.partner())
                        .expect("out port must be attached");
                    debug_assert!(!nxt_is_head);
                    if nxt == seed {
                        closed = true;
                        break;
                    }
                    strand.push(nxt);
                    e = nxt;
                }
            }
        }
        if !closed {
            // backward from the tail
            let mut e = seed;
            loop {
                let tail = self.edges[e].as_ref().unwrap().tail;
                match tail {
                    BEnd::Corner(_) => break,
                    BEnd::Port { c, role } => {
                        debug_assert!(!role.is_in());
                        passes.push((c, role == Role::UnderOut));
                        let (prv, prv_is_head) = self
                            .find_port(c, role.partner())
                            .expect("in port must be attached");
                        debug_assert!(prv != seed, "closed strand reached the seed backwards");
                        debug_assert!(prv_is_head);
                        strand.push(prv);
                        e = prv;
                    }
                }
            }
        }
        strand.sort_unstable();
        strand.dedup();
        passes.sort_unstable();
        passes.dedup();
        // flip edge directions
        for &e in &strand {
            let edge = self.edges[e].as_mut().unwrap();
            std::mem::swap(&mut edge.tail, &mut edge.head);
        }
        // relabel the p orts at each pass and flip the crossing sign
        for &(c, under) in &passes {
            let (a, b) = if under {
                (Role::UnderIn, Role::UnderOut)
            } else {
                (Role::OverIn, Role::OverOut)
            };
            for e in self.edges.iter_mut().flatten() {
                for end in [&mut e.tail, &mut e.head] {
                    if let BEnd::Port { c: pc, role } = end {
                        if *pc == c && (*role == a || *role == b) {
                            *role = role.partner();
                        }
                    }
                }
            }
            self.signs[c] = -self.signs[c];
        }
    }

    /// Side-by-side addition: glue this tangle's NE/SE to the other's
    /// NW/SW. Orientations of the second tangle are adapted as needed.
    pub fn add(a: Tangle, b: Tangle) -> Result<Tangle> {
        let mut t = a;
        t.absorb(b);
        t.sew(NE as u8, 4 + NW as u8, false)?;
        t.sew(SE as u8, 4 + SW as u8, false)?;
        t.relabel_corner(4 + NE as u8, NE as u8);
        t.relabel_corner(4 + SE as u8, SE as u8);
        Ok(t)
    }

    /// Vertical stacking: glue this tangle's SW/SE to the other's NW/NE.
    pub fn stack(a: Tangle, b: Tangle) -> Result<Tangle> {
        let mut t = a;
        t.absorb(b);
        t.sew(SW as u8, 4 + NW as u8, false)?;
        t.sew(SE as u8, 4 + NE as u8, false)?;
        t.relabel_corner(4 + SW as u8, SW as u8);
        t.relabel_corner(4 + SE as u8, SE as u8);
        Ok(t)
    }

    /// Rotate the tangle 90 degrees counterclockwise (corners relabel,
    /// the underlying map is unchanged).
    pub fn rotated(mut self) -> Tangle {
        // old NE -> NW, old SE -> NE, old SW -> SE, old NW -> SW
        let map = [SW as u8, NW as u8, SE as u8, NE as u8];
        for e in self.edges.iter_mut().flatten() {
            for end in [&mut e.tail, &mut e.head] {
                if let BEnd::Corner(k) = end {
                    if *k < 4 {
                        *k = map[*k as usize];
                    }
                }
            }
        }
        self
    }

    /// Mirror image: every crossing switches over/under (signs negate).
    pub fn mirrored(mut self) -> Tangle {
        for e in self.edges.iter_mut().flatten() {
            for end in [&mut e.tail, &mut e.head] {
                if let BEnd::Port { role, .. } = end {
                    *role = match role {
                        Role::UnderIn => Role::OverIn,
                        Role::UnderOut => Role::OverOut,
                        Role::OverIn => Role::UnderIn,
                        Role::OverOut => Role::UnderOut,
                    };
                }
            }
        }
        for s in &mut self.signs {
            *s = -*s;
        }
        self
    }

    /// Reverse the orientation of every strand.
    pub fn reversed(mut self) -> Tangle {
        let live: Vec<usize> = (0..self.edges.len())
            .filter(|&i| self.edges[i].is_some())
            .collect();
        let mut done = std::collections::HashSet::new();
        for e in live {
            if done.contains(&e) || self.edges[e].is_none() {
                continue;
            }
            let strand = self.strand_of(e);
            for &x in &strand {
                done.insert(x);
            }
            self.reverse_strand(e);
        }
        self
    }

    fn strand_of(&self, seed: usize) -> Vec<usize> {
        let mut strand = vec![seed];
        let mut e = seed;
        loop {
            match self.edges[e].as_ref().unwrap().head {
                BEnd::Corner(_) => break,
                BEnd::Port { c, role } => {
                    let (nxt, _) = self.find_port(c, role.partner()).unwrap();
                    if nxt == seed {
                        return strand;
                    }
                    strand.push(nxt);
                    e = nxt;
                }
            }
        }
        let mut e = seed;
        loop {
            match self.edges[e].as_ref().unwrap().tail {
                BEnd::Corner(_) => break,
                BEnd::Port { c, role } => {
                    let (prv, _) = self.find_port(c, role.partner()).unwrap();
                    if prv == seed {
                        break;
                    }
                    strand.push(prv);
                    e = prv;
                }
            }
        }
        strand
    }

    /// Force the orientation variant given by a label like "NWin-SWout".
    pub fn with_variant(mut self, label: &str) -> Result<Tangle> {
        let wants = parse_variant(label)?;
        for &(corner, inward) in &wants {
            let (e, is_head) = self.find_corner(corner)?;
            // tail at corner = strand flows inward there
            let cur_inward = !is_head;
            if cur_inward != inward {
                self.reverse_strand(e);
            }
        }
        for &(corner, inward) in &wants {
            let (_, is_head) = self.find_corner(corner)?;
            if !is_head != inward {
                return Err(Error::Orientation(format!(
                    "variant '{label}' is inconsistent with the strand connectivity"
                )));
            }
        }
        Ok(self)
    }

    fn close(mut self, pairs: [(u8, u8); 2], strict: bool, name: &str) -> Result<Diagram> {
        for (a, b) in pairs {
            self.sew(a, b, strict)?;
        }
        self.finalize_inner(name, false)
    }

    /// Numerator closure: join NW-NE and SW-SE. Errors on orientation
    /// mismatch at a closure arc.
    pub fn numerator(self, name: &str) -> Result<Diagram> {
        self.close([(NW as u8, NE as u8), (SW as u8, SE as u8)], true, name)
    }

    /// Denominator closure: join NW-SW and NE-SE.
    pub fn denominator(self, name: &str) -> Result<Diagram> {
        self.close([(NW as u8, SW as u8), (NE as u8, SE as u8)], true, name)
    }

    /// Numerator closure that reverses strands as needed to glue.
    pub fn numerator_auto(self, name: &str) -> Result<Diagram> {
        self.close([(NW as u8, NE as u8), (SW as u8, SE as u8)], false, name)
    }

    /// Denominator closure that reverses strands as needed to glue.
    pub fn denominator_auto(self, name: &str) -> Result<Diagram> {
        self.close([(NW as u8, SW as u8), (NE as u8, SE as u8)], false, name)
    }

    /// Finalize as a 4-endpoint tangle diagram.
    pub fn finalize(self, name: &str) -> Result<Diagram> {
        self.finalize_inner(name, true)
    }

    fn finalize_inner(self, name: &str, tangle: bool) -> Result<Diagram> {
        // renumber live edges
        let mut map = vec![usize::MAX; self.edges.len()];
        let mut live = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.is_some() {
                map[i] = live.len();
                live.push(i);
            }
        }
        let to_port = |end: BEnd, sign_of: &dyn Fn(usize) -> i8| -> Result<Port> {
            match end {
                BEnd::Port { c, role } => Ok(Port::Cross {
                    c,
                    slot: role.slot(sign_of(c)) as u8,
                }),
                BEnd::Corner(k) if k < 4 && tangle => Ok(Port::Boundary(k)),
                BEnd::Corner(k) => Err(Error::Internal(format!(
                    "dangling corner {k} in finalized {} diagram",
                    if tangle { "tangle" } else { "closed" }
                ))),
            }
        };
        let signs = self.signs.clone();
        let sign_of = move |c: usize| signs[c];
        let mut edges: Vec<Edge> = Vec::with_capacity(live.len());
        for &i in &live {
            let e = self.edges[i].as_ref().unwrap();
            edges.push(Edge {
                tail: to_port(e.tail, &sign_of)?,
                head: to_port(e.head, &sign_of)?,
                arc: 0,
            });
        }
        // assemble crossings
        let mut crossings: Vec<Crossing> = self
            .signs
            .iter()
            .map(|&sign| Crossing {
                ends: [EdgeEnd { edge: usize::MAX, into: false }; 4],
                sign,
            })
            .collect();
        for (ei, e) in edges.iter().enumerate() {
            for (port, into) in [(e.tail, false), (e.head, true)] {
                if let Port::Cross { c, slot } = port {
                    let end = &mut crossings[c].ends[slot as usize];
                    if end.edge != usize::MAX {
                        return Err(Error::Internal(format!(
                            "crossing {c} slot {slot} doubly attached"
                        )));
                    }
                    *end = EdgeEnd { edge: ei, into };
                }
            }
        }
        for (ci, cr) in crossings.iter().enumerate() {
            if cr.ends.iter().any(|e| e.edge == usize::MAX) {
                return Err(Error::Internal(format!("crossing {ci} has open ports")));
            }
        }
        let mut boundary = None;
        if tangle {
            let mut ends = [BoundaryEnd { edge: 0, inward: false }; 4];
            let mut found = [false; 4];
            for (ei, e) in edges.iter().enumerate() {
                if let Port::Boundary(k) = e.tail {
                    ends[k as usize] = BoundaryEnd { edge: ei, inward: true };
                    found[k as usize] = true;
                }
                if let Port::Boundary(k) = e.head {
                    ends[k as usize] = BoundaryEnd { edge: ei, inward: false };
                    found[k as usize] = true;
                }
            }
            if found != [true; 4] {
                return Err(Error::InvalidDiagram("tangle must touch all four endpoints".into()));
            }
            if self.free_loops > 0 {
                return Err(Error::InvalidDiagram("tangle with a closed loop component".into()));
            }
            boundary = Some(ends);
        }
        let mut arc_count = assign_arcs(&crossings, &mut edges);
        let loop_arcs: Vec<usize> = (0..self.free_loops).map(|i| arc_count + i).collect();
        arc_count += self.free_loops;
        let faces = trace_faces(&crossings, &edges, tangle)?;
        let d = Diagram {
            name: name.to_string(),
            crossings,
            edges,
            boundary,
            free_loops: self.free_loops,
            arc_count,
            loop_arcs,
            faces,
        };
        validate_diagram(&d)?;
        Ok(d)
    }
}

fn corner_name(k: u8) -> &'static str {
    CORNER_NAMES.get(k as usize).copied().unwrap_or("?")
}

pub(crate) fn parse_variant(label: &str) -> Result<Vec<(u8, bool)>> {
    let mut out = Vec::new();
    for part in label.split('-') {
        let part = part.trim();
        let (corner, dir) = if let Some(p) = part.strip_suffix("in") {
            (p, true)
        } else if let Some(p) = part.strip_suffix("out") {
            (p, false)
        } else {
            return Err(Error::Parse(format!("bad orientation '{part}'")));
        };
        let idx = CORNER_NAMES
            .iter()
            .position(|&n| n.eq_ignore_ascii_case(corner.trim()))
            .ok_or_else(|| Error::Parse(format!("bad corner '{corner}'")))?;
        out.push((idx as u8, dir));
    }
    Ok(out)
}

/// A braid word on `strands` strands with generators `+-1..strands-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    pub strands: usize,
    pub word: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, word: Vec<i32>) -> Result<BraidWord> {
        if strands < 1 {
            return Err(Error::Parse("braid needs at least one strand".into()));
        }
        for &g in &word {
            if g == 0 || g.unsigned_abs() as usize >= strands {
                return Err(Error::Parse(format!(
                    "generator {g} out of range for {strands} strands"
                )));
            }
        }
        Ok(BraidWord { strands, word })
    }

    /// The 4-plat tangle of a 4-strand braid: the middle two strands
    /// are capped above and below, the outer ends become NW/NE/SW/SE.
    pub fn plat(&self) -> Result<Tangle> {
        self.plat_at(1, 1)
    }

    /// Plat with caps at chosen positions: the top cap joins strands
    /// (tc, tc+1), the bottom cap (bc, bc+1); the free ends become the
    /// four tangle corners in left-to-right order.
    pub fn plat_at(&self, tc: usize, bc: usize) -> Result<Tangle> {
        if self.strands != 4 || tc > 2 || bc > 2 {
            return Err(Error::Parse("plat tangles need a 4-strand braid and caps 0..=2".into()));
        }
        const TOP: u8 = 100;
        const BOT: u8 = 200;
        let mut t = Tangle::empty();
        let tops: Vec<usize> = (0..4u8)
            .map(|j| t.new_edge(BEnd::Corner(TOP + j), BEnd::Corner(PENDING)))
            .collect();
        let mut cur = tops.clone();
        for &g in &self.word {
            let i = g.unsigned_abs() as usize - 1;
            let sign: i8 = if g > 0 { 1 } else { -1 };
            let c = t.new_crossing(sign);
            let (left, right) = (cur[i], cur[i + 1]);
            let (under_src, over_src) = if sign > 0 { (left, right) } else { (right, left) };
            t.edges[under_src].as_mut().unwrap().head = BEnd::Port { c, role: Role::UnderIn };
            t.edges[over_src].as_mut().unwrap().head = BEnd::Port { c, role: Role::OverIn };
            let under_out =
                t.new_edge(BEnd::Port { c, role: Role::UnderOut }, BEnd::Corner(PENDING));
            let over_out =
                t.new_edge(BEnd::Port { c, role: Role::OverOut }, BEnd::Corner(PENDING));
            if sign > 0 {
                cur[i] = over_out;
                cur[i + 1] = under_out;
            } else {
                cur[i] = under_out;
                cur[i + 1] = over_out;
            }
        }
        // name the dangling bottom ends
        for (j, &e) in cur.iter().enumerate() {
            let edge = t.edges[e].as_mut().unwrap();
            if edge.head == BEnd::Corner(PENDING) {
                edge.head = BEnd::Corner(BOT + j as u8);
            } else if edge.tail == BEnd::Corner(PENDING) {
                edge.tail = BEnd::Corner(BOT + j as u8);
            } else {
                return Err(Error::Internal("plat bottom end already bound".into()));
            }
        }
        // caps join the chosen pairs above and below
        t.sew(TOP + tc as u8, TOP + tc as u8 + 1, false)?;
        t.sew(BOT + bc as u8, BOT + bc as u8 + 1, false)?;
        let top_free: Vec<u8> = (0..4u8).filter(|&j| j != tc as u8 && j != tc as u8 + 1).collect();
        let bot_free: Vec<u8> = (0..4u8).filter(|&j| j != bc as u8 && j != bc as u8 + 1).collect();
        t.relabel_corner(TOP + top_free[0], NW as u8);
        t.relabel_corner(TOP + top_free[1], NE as u8);
        t.relabel_corner(BOT + bot_free[0], SW as u8);
        t.relabel_corner(BOT + bot_free[1], SE as u8);
        Ok(t)
    }

    /// Parse "k g1 g2 ..." where k is the strand count.
    pub fn parse(text: &str) -> Result<BraidWord> {
        let mut it = text.split_whitespace();
        let strands: usize = it
            .next()
            .ok_or_else(|| Error::Parse("empty braid word".into()))?
            .parse()
            .map_err(|e| Error::Parse(format!("bad strand count: {e}")))?;
        let word: Vec<i32> = it
            .map(|tok| {
                tok.parse::<i32>()
                    .map_err(|e| Error::Parse(format!("bad generator '{tok}': {e}")))
            })
            .collect::<Result<_>>()?;
        BraidWord::new(strands, word)
    }

    /// Close the braid (strands oriented downward) into a diagram.
    pub fn close(&self, name: &str) -> Result<Diagram> {
        let mut t = Tangle::empty();
        let k = self.strands;
        let tops: Vec<usize> = (0..k)
            .map(|j| t.new_edge(BEnd::Corner(PENDING), BEnd::Corner(PENDING.wrapping_sub(j as u8))))
            .collect();
        let mut cur = tops.clone();
        for &g in &self.word {
            let i = g.unsigned_abs() as usize - 1;
            let sign: i8 = if g > 0 { 1 } else { -1 };
            let c = t.new_crossing(sign);
            let (left, right) = (cur[i], cur[i + 1]);
            if sign > 0 {
                // left strand dives under toward position i+1
                t.edges[left].as_mut().unwrap().head = BEnd::Port { c, role: Role::UnderIn };
                t.edges[right].as_mut().unwrap().head = BEnd::Port { c, role: Role::OverIn };
                let under_out =
                    t.new_edge(BEnd::Port { c, role: Role::UnderOut }, BEnd::Corner(PENDING));
                let over_out =
                    t.new_edge(BEnd::Port { c, role: Role::OverOut }, BEnd::Corner(PENDING));
                cur[i] = over_out;
                cur[i + 1] = under_out;
            } else {
                // right strand dives under toward position i
                t.edges[right].as_mut().unwrap().head = BEnd::Port { c, role: Role::UnderIn };
                t.edges[left].as_mut().unwrap().head = BEnd::Port { c, role: Role::OverIn };
                let under_out =
                    t.new_edge(BEnd::Port { c, role: Role::UnderOut }, BEnd::Corner(PENDING));
                let over_out =
                    t.new_edge(BEnd::Port { c, role: Role::OverOut }, BEnd::Corner(PENDING));
                cur[i] = under_out;
                cur[i + 1] = over_out;
            }
        }
        // close position j's dangling bottom onto the top of position j
        for j in 0..k {
            let bottom = cur[j];
            let top = tops[j];
            if bottom == top {
                t.edges[top] = None;
                t.free_loops += 1;
                continue;
            }
            let top_head = t.edges[top].as_ref().unwrap().head;
            t.edges[bottom].as_mut().unwrap().head = top_head;
            // reattach: if the top edge had already been consumed by a
            // crossing, its head is a port; otherwise it was idle.
            t.edges[top] = None;
            if let BEnd::Corner(_) = top_head {
                // idle strand that never met a crossing: bottom == top handled above
                return Err(Error::Internal("braid closure lost a strand".into()));
            }
        }
        t.finalize_inner(name, false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variant_parse() {
        let v = parse_variant("NWin-SWout").unwrap();
        assert_eq!(v, vec![(NW as u8, true), (SW as u8, false)]);
        assert!(parse_variant("NWup").is_err());
    }

    #[test]
    fn braid_word_validation() {
        assert!(BraidWord::parse("2 1 1 1").is_ok());
        assert!(BraidWord::parse("2 2").is_err());
        assert!(BraidWord::parse("2 0").is_err());
        assert!(BraidWord::parse("").is_err());
    }

    #[test]
    fn reversal_is_involution() {
        let t = Tangle::rational(&[2, 1, 2]).unwrap();
        let d1 = t.clone().finalize("a").unwrap();
        let d2 = t.reversed().reversed().finalize("b").unwrap();
        assert_eq!(d1.crossings.len(), d2.crossings.len());
        for (x, y) in d1.crossings.iter().zip(&d2.crossings) {
            assert_eq!(x.sign, y.sign);
            assert_eq!(x.ends, y.ends);
        }
    }

    #[test]
    fn reversal_flips_signs() {
        let t = Tangle::htwist(3);
        let f = t.clone().finalize("f").unwrap();
        // reversing just one strand flips every crossing sign
        let mut r = t;
        let (e, _) = r.find_corner(NW as u8).unwrap();
        r.reverse_strand(e);
        let g = r.finalize("g").unwrap();
        for (a, b) in f.crossings.iter().zip(&g.crossings) {
            assert_eq!(a.sign, -b.sign);
        }
        g.validate().unwrap();
    }
}

impl Tangle {
    /// Rebuild a finalized diagram as a tangle-in-progress (tangle
    /// corners are kept; closed diagrams get no corners).
    pub fn from_diagram(d: &Diagram) -> Result<Tangle> {
        if d.free_loops > 0 {
            return Err(Error::InvalidDiagram(
                "cannot rebuild a diagram with loose loop components".into(),
            ));
        }
        let mut t = Tangle::empty();
        t.signs = d.crossings.iter().map(|c| c.sign).collect();
        for e in &d.edges {
            let conv = |p: Port, _into: bool| -> BEnd {
                match p {
                    Port::Cross { c, slot } => {
                        let sign = d.crossings[c].sign;
                        let role = match (sign > 0, slot) {
                            (_, 0) => Role::UnderIn,
                            (_, 2) => Role::UnderOut,
                            (true, 1) | (false, 3) => Role::OverOut,
                            _ => Role::OverIn,
                        };
                        BEnd::Port { c, role }
                    }
                    Port::Boundary(k) => BEnd::Corner(k),
                }
            };
            t.new_edge(conv(e.tail, false), conv(e.head, true));
        }
        Ok(t)
    }

    /// Cut two edges of a closed diagram, producing a tangle whose
    /// denominator closure restores the original. The cut edges must
    /// border a common face for the result to be planar (checked by
    /// finalize). `swap1`/`swap2` flip which corner each stub takes.
    pub fn cut_edges(d: &Diagram, e1: usize, e2: usize, swap1: bool, swap2: bool) -> Result<Tangle> {
        if e1 == e2 {
            return Err(Error::InvalidDiagram("cut needs two distinct edges".into()));
        }
        let mut t = Tangle::from_diagram(d)?;
        // edge e: tail -> head becomes tail -> corner_a, corner_b -> head
        let split = |t: &mut Tangle, e: usize, ca: u8, cb: u8| {
            let edge = t.edges[e].take().unwrap();
            t.new_edge(edge.tail, BEnd::Corner(ca));
            t.new_edge(BEnd::Corner(cb), edge.head);
        };
        // D joins NW-SW and NE-SE, so e1 spans NW/SW and e2 spans NE/SE
        let (a1, b1) = if swap1 {
            (SW as u8, NW as u8)
        } else {
            (NW as u8, SW as u8)
        };
        let (a2, b2) = if swap2 {
            (SE as u8, NE as u8)
        } else {
            (NE as u8, SE as u8)
        };
        split(&mut t, e1, a1, b1);
        split(&mut t, e2, a2, b2);
        Ok(t)
    }

    /// Remove one crossing of a closed diagram; its four edge-ends
    /// become the tangle corners (`rotation` picks the base corner).
    pub fn cut_crossing(d: &Diagram, c: usize, rotation: u8) -> Result<Tangle> {
        let mut t = Tangle::from_diagram(d)?;
        // corner cycle seen from the complement runs opposite to the
        // crossing's ccw slot cycle: slots (0,3,2,1) -> (NW,SW,SE,NE)
        let corner_of_slot = |slot: usize| -> u8 {
            let order = [NW as u8, NE as u8, SE as u8, SW as u8]; // slots 0,1,2,3
            order[(slot + rotation as usize) % 4]
        };
        let cr = &d.crossings[c];
        for (slot, end) in cr.ends.iter().enumerate() {
            let corner = corner_of_slot(slot);
            let edge = t.edges[end.edge].as_mut().unwrap();
            if end.into {
                edge.head = BEnd::Corner(corner);
            } else {
                edge.tail = BEnd::Corner(corner);
            }
        }
        // drop the crossing by renumbering: mark it unused by rewiring
        // is enough, but the sign list must shrink; rebuild indices
        let mut map = Vec::with_capacity(t.signs.len());
        let mut new_signs = Vec::with_capacity(t.signs.len() - 1);
        for (i, &s) in t.signs.iter().enumerate() {
            if i == c {
                map.push(usize::MAX);
            } else {
                map.push(new_signs.len());
                new_signs.push(s);
            }
        }
        t.signs = new_signs;
        for e in t.edges.iter_mut().flatten() {
            for end in [&mut e.tail, &mut e.head] {
                if let BEnd::Port { c: pc, .. } = end {
                    if *pc == c {
                        return Err(Error::Internal("cut crossing still referenced".into()));
                    }
                    if map[*pc] != usize::MAX {
                        *pc = map[*pc];
                    }
                }
            }
        }
        Ok(t)
    }
}
