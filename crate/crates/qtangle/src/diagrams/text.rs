//! Text formats for diagrams.
//!
//! PD lines: `X a b c d s` lists the edge labels counterclockwise from
//! the incoming under-edge, with `s` the crossing sign (`+` or `-`).
//! Tangles append `B NW:<edge>:<in|out> NE:... SW:... SE:...`.
//!
//! Construction expressions build tangles from twist regions:
//! `R(a,b,...)` (rational, first entry horizontal), `V(n)`/`H(n)`
//! twist regions, `add(s,t)`, `stack(s,t)`, `rot(t)`, `mirror(t)`,
//! `rev(t)`; knots close tangles with `N(t)`, `D(t)` (or `Na`/`Da`,
//! which re-orient strands as needed) and take `mirror(k)`.

use super::*;
use crate::error::{Error, Result};

impl Diagram {
    /// Serialize to the PD text format (one line).
    pub fn to_pd_string(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        for cr in &self.crossings {
            let ids: Vec<String> = cr.ends.iter().map(|e| (e.edge + 1).to_string()).collect();
            parts.push(format!(
                "X {} {}",
                ids.join(" "),
                if cr.sign > 0 { "+" } else { "-" }
            ));
        }
        if let Some(b) = &self.boundary {
            let mut s = String::from("B");
            for (i, end) in b.iter().enumerate() {
                s.push_str(&format!(
                    " {}:{}:{}",
                    CORNER_NAMES[i],
                    end.edge + 1,
                    if end.inward { "in" } else { "out" }
                ));
            }
            parts.push(s);
        }
        parts.join(" ; ")
    }

    /// Parse the PD text format produced by [`Diagram::to_pd_string`].
    pub fn from_pd_string(name: &str, text: &str) -> Result<Diagram> {
        let mut crossings_raw: Vec<([usize; 4], i8)> = Vec::new();
        let mut boundary_raw: Option<[(usize, bool); 4]> = None;
        for chunk in text.split(';') {
            let toks: Vec<&str> = chunk.split_whitespace().collect();
            if toks.is_empty() {
                continue;
            }
            match toks[0] {
                "X" => {
                    if toks.len() != 6 {
                        return Err(Error::Parse(format!(
                            "crossing needs 4 edges and a sign: '{}'",
                            chunk.trim()
                        )));
                    }
                    let mut ids = [0usize; 4];
                    for (i, tok) in toks[1..5].iter().enumerate() {
                        let v: usize = tok
                            .parse()
                            .map_err(|e| Error::Parse(format!("bad edge '{tok}': {e}")))?;
                        if v == 0 {
                            return Err(Error::Parse("edge labels start at 1".into()));
                        }
                        ids[i] = v - 1;
                    }
                    let sign = match toks[5] {
                        "+" | "+1" | "1" => 1,
                        "-" | "-1" => -1,
                        other => return Err(Error::Parse(format!("bad sign '{other}'"))),
                    };
                    crossings_raw.push((ids, sign));
                }
                "B" => {
                    if toks.len() != 5 {
                        return Err(Error::Parse("boundary line needs four endpoints".into()));
                    }
                    let mut ends = [(0usize, false); 4];
                    for tok in &toks[1..] {
                        let fields: Vec<&str> = tok.split(':').collect();
                        if fields.len() != 3 {
                            return Err(Error::Parse(format!("bad boundary item '{tok}'")));
                        }
                        let corner = CORNER_NAMES
                            .iter()
                            .position(|&n| n.eq_ignore_ascii_case(fields[0]))
                            .ok_or_else(|| Error::Parse(format!("bad corner '{}'", fields[0])))?;
                        let edge: usize = fields[1]
                            .parse()
                            .map_err(|e| Error::Parse(format!("bad edge '{}': {e}", fields[1])))?;
                        if edge == 0 {
                            return Err(Error::Parse("edge labels start at 1".into()));
                        }
                        let inward = match fields[2] {
                            "in" => true,
                            "out" => false,
                            other => {
                                return Err(Error::Parse(format!("bad direction '{other}'")))
                            }
                        };
                        ends[corner] = (edge - 1, inward);
                    }
                    boundary_raw = Some(ends);
                }
                other => return Err(Error::Parse(format!("unknown PD item '{other}'"))),
            }
        }
        assemble(name, crossings_raw, boundary_raw)
    }
}

/// Assemble a diagram from raw crossing slot data.
pub(crate) fn assemble(
    name: &str,
    crossings_raw: Vec<([usize; 4], i8)>,
    boundary_raw: Option<[(usize, bool); 4]>,
) -> Result<Diagram> {
    let n_edges = crossings_raw
        .iter()
        .flat_map(|(ids, _)| ids.iter().copied())
        .chain(boundary_raw.iter().flat_map(|b| b.iter().map(|x| x.0)))
        .max()
        .map(|m| m + 1)
        .unwrap_or(0);
    let mut tails: Vec<Option<Port>> = vec![None; n_edges];
    let mut heads: Vec<Option<Port>> = vec![None; n_edges];
    let mut place = |edge: usize, port: Port, into: bool| -> Result<()> {
        let slot = if into { &mut heads[edge] } else { &mut tails[edge] };
        if slot.is_some() {
            return Err(Error::Parse(format!(
                "edge {} used twice as {}",
                edge + 1,
                if into { "head" } else { "tail" }
            )));
        }
        *slot = Some(port);
        Ok(())
    };
    for (ci, (ids, sign)) in crossings_raw.iter().enumerate() {
        for (slot, &edge) in ids.iter().enumerate() {
            let into = match slot {
                0 => true,
                2 => false,
                1 => *sign < 0,
                _ => *sign > 0,
            };
            place(
                edge,
                Port::Cross {
                    c: ci,
                    slot: slot as u8,
                },
                into,
            )?;
        }
    }
    if let Some(b) = &boundary_raw {
        for (corner, &(edge, inward)) in b.iter().enumerate() {
            // inward: the strand enters the diagram here, so the edge's tail sits at the corner
            place(edge, Port::Boundary(corner as u8), !inward)?;
        }
    }
    let mut edges = Vec::with_capacity(n_edges);
    for i in 0..n_edges {
        match (tails[i], heads[i]) {
            (Some(tail), Some(head)) => edges.push(Edge { tail, head, arc: 0 }),
            _ => {
                return Err(Error::Parse(format!(
                    "edge {} does not have both a tail and a head",
                    i + 1
                )))
            }
        }
    }
    let mut crossings: Vec<Crossing> = Vec::with_capacity(crossings_raw.len());
    for (ci, (ids, sign)) in crossings_raw.iter().enumerate() {
        let mut ends = [EdgeEnd { edge: 0, into: false }; 4];
        for (slot, &edge) in ids.iter().enumerate() {
            let into = edges[edge].head
                == Port::Cross {
                    c: ci,
                    slot: slot as u8,
                };
            ends[slot] = EdgeEnd { edge, into };
        }
        crossings.push(Crossing { ends, sign: *sign });
    }
    let mut edges = edges;
    let arc_count = assign_arcs(&crossings, &mut edges);
    let faces = trace_faces(&crossings, &edges, boundary_raw.is_some())?;
    let boundary = boundary_raw.map(|b| {
        let mut out = [BoundaryEnd { edge: 0, inward: false }; 4];
        for (corner, &(edge, inward)) in b.iter().enumerate() {
            out[corner] = BoundaryEnd { edge, inward };
        }
        out
    });
    let d = Diagram {
        name: name.to_string(),
        crossings,
        edges,
        boundary,
        free_loops: 0,
        arc_count,
        loop_arcs: Vec::new(),
        faces,
    };
    validate_diagram(&d)?;
    Ok(d)
}

struct Cursor<'a> {
    src: &'a str,
    toks: Vec<char>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Cursor<'a> {
        Cursor {
            src,
            toks: src.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<char> {
        self.toks.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Parse(format!(
                "expected '{c}' at {} in '{}'",
                self.pos, self.src
            )))
        }
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            self.pos += 1;
        }
        self.toks[start..self.pos].iter().collect()
    }

    fn int(&mut self) -> Result<i32> {
        let start = self.pos;
        if self.peek() == Some('-') || self.peek() == Some('+') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s: String = self.toks[start..self.pos].iter().collect();
        s.parse()
            .map_err(|e| Error::Parse(format!("bad integer '{s}' in '{}': {e}", self.src)))
    }
}

/// Parse a tangle construction expression.
pub fn parse_tangle_expr(src: &str) -> Result<Tangle> {
    let mut cur = Cursor::new(src);
    let t = tangle_expr(&mut cur)?;
    if cur.pos != cur.toks.len() {
        return Err(Error::Parse(format!("trailing input in '{src}'")));
    }
    Ok(t)
}

fn tangle_expr(cur: &mut Cursor) -> Result<Tangle> {
    let name = cur.ident();
    match name.as_str() {
        "R" => {
            cur.eat('(')?;
            let mut parts = Vec::new();
            if cur.peek() != Some(')') {
                loop {
                    parts.push(cur.int()?);
                    if cur.peek() == Some(',') {
                        cur.pos += 1;
                    } else {
                        break;
                    }
                }
            }
            cur.eat(')')?;
            Tangle::rational(&parts)
        }
        "H" | "V" => {
            cur.eat('(')?;
            let n = cur.int()?;
            cur.eat(')')?;
            Ok(if name == "H" {
                Tangle::htwist(n)
            } else {
                Tangle::vtwist(n)
            })
        }
        "X" => {
            cur.eat('(')?;
            let n = cur.int()?;
            cur.eat(')')?;
            if n != 1 && n != -1 {
                return Err(Error::Parse("X(s) needs s = 1 or -1".into()));
            }
            Ok(Tangle::crossing(n as i8))
        }
        "add" | "stack" => {
            cur.eat('(')?;
            let a = tangle_expr(cur)?;
            cur.eat(',')?;
            let mut out = a;
            loop {
                let b = tangle_expr(cur)?;
                out = if name == "add" {
                    Tangle::add(out, b)?
                } else {
                    Tangle::stack(out, b)?
                };
                if cur.peek() == Some(',') {
                    cur.pos += 1;
                } else {
                    break;
                }
            }
            cur.eat(')')?;
            Ok(out)
        }
        "rot" => {
            cur.eat('(')?;
            let t = tangle_expr(cur)?;
            cur.eat(')')?;
            Ok(t.rotated())
        }
        "mirror" => {
            cur.eat('(')?;
            let t = tangle_expr(cur)?;
            cur.eat(')')?;
            Ok(t.mirrored())
        }
        "rev" => {
            cur.eat('(')?;
            let t = tangle_expr(cur)?;
            cur.eat(')')?;
            Ok(t.reversed())
        }
        "plat" => {
            // plat(tc, bc, g1, g2, ...): caps of a 4-strand braid
            cur.eat('(')?;
            let mut nums = Vec::new();
            if cur.peek() != Some(')') {
                loop {
                    nums.push(cur.int()?);
                    if cur.peek() == Some(',') {
                        cur.pos += 1;
                    } else {
                        break;
                    }
                }
            }
            cur.eat(')')?;
            if nums.len() < 3 {
                return Err(Error::Parse("plat needs cap positions and a word".into()));
            }
            let (tc, bc) = (nums[0], nums[1]);
            if !(0..=2).contains(&tc) || !(0..=2).contains(&bc) {
                return Err(Error::Parse("plat caps must be 0, 1 or 2".into()));
            }
            let w = BraidWord::new(4, nums[2..].to_vec())?;
            w.plat_at(tc as usize, bc as usize)
        }
        other => Err(Error::Parse(format!(
            "unknown tangle constructor '{other}'"
        ))),
    }
}

/// Parse a knot construction expression (a closure of a tangle
/// expression, possibly mirrored).
pub fn parse_knot_expr(name: &str, src: &str) -> Result<Diagram> {
    let mut cur = Cursor::new(src);
    let d = knot_expr(&mut cur, name)?;
    if cur.pos != cur.toks.len() {
        return Err(Error::Parse(format!("trailing input in '{src}'")));
    }
    Ok(d)
}

fn knot_expr(cur: &mut Cursor, name: &str) -> Result<Diagram> {
    let word = cur.ident();
    match word.as_str() {
        "N" | "D" | "Na" | "Da" => {
            cur.eat('(')?;
            let t = tangle_expr(cur)?;
            cur.eat(')')?;
            match word.as_str() {
                "N" => t.numerator(name),
                "D" => t.denominator(name),
                "Na" => t.numerator_auto(name),
                _ => t.denominator_auto(name),
            }
        }
        "mirror" => {
            cur.eat('(')?;
            let inner = knot_expr(cur, name)?;
            cur.eat(')')?;
            mirror_diagram(&inner)
        }
        other => Err(Error::Parse(format!("unknown knot constructor '{other}'"))),
    }
}

/// Mirror a finalized diagram: every crossing switches over/under.
/// The counterclockwise end cycle is rebased at the old over-in slot.
pub fn mirror_diagram(d: &Diagram) -> Result<Diagram> {
    let mut crossings_raw = Vec::with_capacity(d.crossings.len());
    for cr in &d.crossings {
        let base = if cr.sign > 0 { 3 } else { 1 };
        let ids = [
            cr.ends[base].edge,
            cr.ends[(base + 1) % 4].edge,
            cr.ends[(base + 2) % 4].edge,
            cr.ends[(base + 3) % 4].edge,
        ];
        crossings_raw.push((ids, -cr.sign));
    }
    let boundary_raw = d
        .boundary
        .map(|b| b.map(|end| (end.edge, end.inward)));
    let mut out = assemble(&d.name, crossings_raw, boundary_raw)?;
    out.free_loops = d.free_loops;
    out.loop_arcs = (0..d.free_loops).map(|i| out.arc_count + i).collect();
    out.arc_count += d.free_loops;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pd_round_trip_knot() {
        let d = BraidWord::parse("2 1 1 1").unwrap().close("3_1").unwrap();
        let text = d.to_pd_string();
        let d2 = Diagram::from_pd_string("3_1", &text).unwrap();
        assert_eq!(d2.crossings.len(), 3);
        assert_eq!(d2.to_pd_string(), text);
        d2.validate().unwrap();
    }

    #[test]
    fn pd_round_trip_tangle() {
        let t = Tangle::rational(&[2, 1]).unwrap().finalize("r21").unwrap();
        let text = t.to_pd_string();
        let t2 = Diagram::from_pd_string("r21", &text).unwrap();
        assert_eq!(t2.to_pd_string(), text);
        assert!(t2.is_tangle());
    }

    #[test]
    fn pd_parse_errors() {
        assert!(Diagram::from_pd_string("x", "X 1 2 3 +").is_err());
        assert!(Diagram::from_pd_string("x", "X 1 2 3 4 ?").is_err());
        // dangling edge label
        assert!(Diagram::from_pd_string("x", "X 1 2 3 4 + ; X 2 1 4 5 -").is_err());
    }

    #[test]
    fn expr_parse() {
        let t = parse_tangle_expr("add(V(3), V(-3))").unwrap();
        let d = t.finalize("6_3").unwrap();
        assert_eq!(d.crossings.len(), 6);
        let k = parse_knot_expr("k", "Na(R(3))").unwrap();
        assert_eq!(k.crossings.len(), 3);
        assert!(parse_tangle_expr("spin(1)").is_err());
    }

    #[test]
    fn mirror_diagram_round_trip() {
        let d = BraidWord::parse("3 1 -2 1 -2").unwrap().close("4_1").unwrap();
        let m = mirror_diagram(&d).unwrap();
        let mm = mirror_diagram(&m).unwrap();
        assert_eq!(d.to_pd_string(), mm.to_pd_string());
        for (a, b) in d.crossings.iter().zip(&m.crossings) {
            assert_eq!(a.sign, -b.sign);
        }
        assert_eq!(d.faces().faces.len(), m.faces().faces.len());
    }
}
