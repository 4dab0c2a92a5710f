//! Bundled knot and tangle tables, and the invariant cache.
//!
//! Knot entries are sourced as braid words, PD codes, or closure
//! expressions of twist-region tangles (rational knots use their
//! continued-fraction form directly, which keeps the data auditable).
//! Tangle entries pair a construction with an orientation variant.
//! In strict mode, loading cross-checks each tangle against the
//! expected set of quandles that color it nontrivially.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use crate::algebra::Quandle;
use crate::colorings;
use crate::diagrams::{parse_knot_expr, parse_tangle_expr, BraidWord, Diagram};
use crate::error::{Error, Result};

pub const BUNDLED_KNOTS: &str = include_str!("../data/knots_up_to_9.txt");
pub const BUNDLED_TANGLES: &str = include_str!("../data/tangles.txt");

#[derive(Clone, Debug)]
pub struct KnotEntry {
    pub name: String,
    pub source: String,
    pub chirality_note: Option<String>,
    pub diagram: Diagram,
}

pub struct KnotTable {
    pub entries: Vec<KnotEntry>,
    index: HashMap<String, usize>,
}

impl KnotTable {
    pub fn parse(source: &str) -> Result<KnotTable> {
        let mut entries = Vec::new();
        let mut index = HashMap::new();
        for (ln, raw) in source.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let entry = parse_knot_line(line).map_err(|e| Error::ParseAt {
                line: ln + 1,
                msg: e.to_string(),
            })?;
            if index.contains_key(&entry.name) {
                return Err(Error::ParseAt {
                    line: ln + 1,
                    msg: format!("duplicate knot name {}", entry.name),
                });
            }
            entry.diagram.validate().map_err(|e| Error::ParseAt {
                line: ln + 1,
                msg: format!("{}: {e}", entry.name),
            })?;
            index.insert(entry.name.clone(), entries.len());
            entries.push(entry);
        }
        Ok(KnotTable { entries, index })
    }

    pub fn bundled() -> Result<KnotTable> {
        KnotTable::parse(BUNDLED_KNOTS)
    }

    pub fn load(path: &Path) -> Result<KnotTable> {
        KnotTable::parse(&std::fs::read_to_string(path)?)
    }

    /// Look a knot up by name; a trailing `*` takes the mirror image.
    pub fn get(&self, name: &str) -> Result<Diagram> {
        if let Some(base) = name.strip_suffix('*') {
            let d = self.get(base)?;
            let mut m = crate::diagrams::mirror_diagram(&d)?;
            m.name = name.to_string();
            return Ok(m);
        }
        self.index
            .get(name)
            .map(|&i| self.entries[i].diagram.clone())
            .ok_or_else(|| Error::Unknown(format!("knot {name}")))
    }

    pub fn diagrams(&self) -> Vec<Diagram> {
        self.entries.iter().map(|e| e.diagram.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn parse_knot_line(line: &str) -> Result<KnotEntry> {
    // forms:
    //   knot <name> braid <k> <g1> <g2> ...
    //   knot <name> pd <X a b c d s ; ...>
    //   knot <name> = <closure expression>
    // an optional trailing `! <note>` records the chirality convention
    let (line, note) = match line.split_once('!') {
        Some((l, n)) => (l.trim(), Some(n.trim().to_string())),
        None => (line, None),
    };
    let mut toks = line.split_whitespace();
    if toks.next() != Some("knot") {
        return Err(Error::Parse("expected 'knot'".into()));
    }
    let name = toks
        .next()
        .ok_or_else(|| Error::Parse("missing knot name".into()))?
        .to_string();
    let kind = toks
        .next()
        .ok_or_else(|| Error::Parse("missing knot source".into()))?;
    let rest: Vec<&str> = toks.collect();
    let diagram = match kind {
        "braid" => BraidWord::parse(&rest.join(" "))?.close(&name)?,
        "pd" => Diagram::from_pd_string(&name, &rest.join(" "))?,
        "=" => parse_knot_expr(&name, &rest.join(" "))?,
        other => return Err(Error::Parse(format!("unknown knot source '{other}'"))),
    };
    Ok(KnotEntry {
        name,
        source: line.to_string(),
        chirality_note: note,
        diagram,
    })
}

#[derive(Clone, Debug)]
pub struct TangleEntry {
    pub name: String,
    pub variant: String,
    pub source: String,
    pub provenance: Option<String>,
    pub diagram: Diagram,
}

pub struct TangleTable {
    pub entries: Vec<TangleEntry>,
    index: HashMap<(String, String), usize>,
}

/// Expected coloring behavior used for the strict cross-check:
/// (tangle, variant or "*" for all, quandle spec, colors nontrivially).
/// Alexander-quandle colorings depend on the orientation variant (the
/// crossing relations use t or 1/t per strand direction), so those
/// rows name the variant; dihedral colorings are orientation-blind.
const TANGLE_COLORING_CHECKS: &[(&str, &str, &str, bool)] = &[
    ("5_1", "*", "alexander:2:t^2+t+1", false),
    ("5_1", "*", "alexander:3:t^2-t+1", false),
    ("5_1", "*", "alexander:5:t^2-t+1", false),
    ("5_1", "*", "dihedral:3", false),
    ("5_1", "*", "dihedral:5", false),
    ("5_1", "*", "dihedral:7", false),
    ("6_2", "NWin-SWout", "alexander:2:t^2+t+1", true),
    ("6_2", "NWin-SWout", "alexander:3:t^2-t+1", true),
    ("6_2", "NWin-SWout", "alexander:5:t^2-t+1", true),
    ("6_2", "NWin-SWout", "alexander:7:t^2-t+1", true),
    ("6_2", "*", "dihedral:3", true),
    ("6_2", "*", "dihedral:5", false),
    ("6_2", "*", "dihedral:7", false),
    ("6_3", "NWin-SWout", "alexander:2:t^2+t+1", true),
    ("6_3", "NWin-SWout", "alexander:3:t^2-t+1", true),
    ("6_3", "NWin-SWout", "alexander:5:t^2-t+1", true),
    ("6_3", "NWin-SWout", "alexander:7:t^2-t+1", true),
    ("6_3", "*", "dihedral:3", true),
    ("6_3", "*", "dihedral:5", false),
    ("6_3", "*", "dihedral:7", false),
    ("7_5", "NWin-NEin", "alexander:2:t^2+t+1", true),
    ("7_5", "NWin-NEin", "alexander:3:t^2-t+1", false),
    ("7_5", "*", "dihedral:3", false),
    ("7_5", "*", "dihedral:5", false),
    ("7_13", "*", "dihedral:5", true),
    ("7_13", "*", "dihedral:3", false),
    ("7_13", "*", "dihedral:7", false),
    ("7_13", "NWin-NEout", "alexander:2:t^2+t+1", false),
    ("7_13", "NWin-NEout", "alexander:3:t^2-t+1", false),
    ("7_15", "*", "dihedral:7", true),
    ("7_15", "*", "dihedral:3", false),
    ("7_15", "*", "dihedral:5", false),
    ("7_15", "NWin-SWin", "alexander:2:t^2+t+1", false),
    ("7_18", "*", "dihedral:5", true),
    ("7_18", "*", "dihedral:3", false),
    ("7_18", "*", "dihedral:7", false),
    ("7_18", "NWin-SWout", "alexander:2:t^2+t+1", false),
    ("7_18", "NWin-SWout", "alexander:3:t^2-t+1", false),
];

impl TangleTable {
    pub fn parse(source: &str, strict: bool) -> Result<TangleTable> {
        let mut entries = Vec::new();
        let mut index = HashMap::new();
        for (ln, raw) in source.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let entry = parse_tangle_line(line).map_err(|e| Error::ParseAt {
                line: ln + 1,
                msg: e.to_string(),
            })?;
            entry.diagram.validate().map_err(|e| Error::ParseAt {
                line: ln + 1,
                msg: format!("{} {}: {e}", entry.name, entry.variant),
            })?;
            let key = (entry.name.clone(), entry.variant.clone());
            if index.contains_key(&key) {
                return Err(Error::ParseAt {
                    line: ln + 1,
                    msg: format!("duplicate tangle {} {}", entry.name, entry.variant),
                });
            }
            index.insert(key, entries.len());
            entries.push(entry);
        }
        let table = TangleTable { entries, index };
        if strict {
            table.check_colorings()?;
        }
        Ok(table)
    }

    pub fn bundled(strict: bool) -> Result<TangleTable> {
        TangleTable::parse(BUNDLED_TANGLES, strict)
    }

    pub fn load(path: &Path, strict: bool) -> Result<TangleTable> {
        TangleTable::parse(&std::fs::read_to_string(path)?, strict)
    }

    /// Look up by `name` or `name:variant` strings like
    /// `6_2:NWin-SWout`; a bare name with a unique entry resolves.
    pub fn get(&self, spec: &str) -> Result<Diagram> {
        let (name, variant) = match spec.split_once(':') {
            Some((n, v)) => (n.to_string(), Some(v.to_string())),
            None => (spec.to_string(), None),
        };
        match variant {
            Some(v) => self
                .index
                .get(&(name.clone(), v.clone()))
                .map(|&i| self.entries[i].diagram.clone())
                .ok_or_else(|| Error::Unknown(format!("tangle {name}:{v}"))),
            None => {
                let hits: Vec<&TangleEntry> = self
                    .entries
                    .iter()
                    .filter(|e| e.name == name)
                    .collect();
                match hits.len() {
                    0 => Err(Error::Unknown(format!("tangle {name}"))),
                    1 => Ok(hits[0].diagram.clone()),
                    _ => Err(Error::Unknown(format!(
                        "tangle {name} has several variants: {}",
                        hits.iter()
                            .map(|e| e.variant.as_str())
                            .collect::<Vec<_>>()
                            .join(", ")
                    ))),
                }
            }
        }
    }

    /// Verify the expected coloring profile of every bundled entry.
    pub fn check_colorings(&self) -> Result<()> {
        for &(name, variant, qspec, nontrivial) in TANGLE_COLORING_CHECKS {
            let hits: Vec<&TangleEntry> = self
                .entries
                .iter()
                .filter(|e| e.name == name && (variant == "*" || e.variant == variant))
                .collect();
            if hits.is_empty() {
                continue;
            }
            let q = Quandle::from_spec(qspec)?;
            for entry in hits {
                let mut count = 0usize;
                for x in 0..q.size() as u16 {
                    count += colorings::enumerate_tangle_colorings(&entry.diagram, &q, x).len();
                }
                let got_nontrivial = count > q.size();
                if got_nontrivial != nontrivial {
                    return Err(Error::InvalidDiagram(format!(
                        "tangle {name} ({}) colors {} by {qspec} ({count} colorings), expected {}",
                        entry.variant,
                        if got_nontrivial { "nontrivially" } else { "trivially" },
                        if nontrivial { "nontrivial" } else { "trivial" },
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn parse_tangle_line(line: &str) -> Result<TangleEntry> {
    // tangle <name> <variant> = <expr>   [! provenance]
    let (line, prov) = match line.split_once('!') {
        Some((l, n)) => (l.trim(), Some(n.trim().to_string())),
        None => (line, None),
    };
    let mut toks = line.split_whitespace();
    if toks.next() != Some("tangle") {
        return Err(Error::Parse("expected 'tangle'".into()));
    }
    let name = toks
        .next()
        .ok_or_else(|| Error::Parse("missing tangle name".into()))?
        .to_string();
    let variant = toks
        .next()
        .ok_or_else(|| Error::Parse("missing orientation variant".into()))?
        .to_string();
    let eq = toks.next();
    let rest: Vec<&str> = toks.collect();
    let diagram = match eq {
        Some("=") => {
            let t = parse_tangle_expr(&rest.join(" "))?;
            t.with_variant(&variant)?
                .finalize(&format!("{name}:{variant}"))?
        }
        Some("pd") => {
            let d = Diagram::from_pd_string(&format!("{name}:{variant}"), &rest.join(" "))?;
            crate::diagrams::Tangle::from_diagram(&d)?
                .with_variant(&variant)?
                .finalize(&format!("{name}:{variant}"))?
        }
        _ => return Err(Error::Parse("expected '=' or 'pd'".into())),
    };
    Ok(TangleEntry {
        name,
        variant,
        source: line.to_string(),
        provenance: prov,
        diagram,
    })
}

/// A line-per-entry invariant cache keyed by (diagram name, quandle
/// spec, cocycle spec). Append-friendly; corrupt lines are skipped.
pub struct InvariantCache {
    path: Option<PathBuf>,
    map: Mutex<HashMap<(String, String, String), String>>,
}

impl InvariantCache {
    pub fn in_memory() -> InvariantCache {
        InvariantCache {
            path: None,
            map: Mutex::new(HashMap::new()),
        }
    }

    /// Open (or create) a file-backed cache. The environment variable
    /// `QTANGLE_CACHE` supplies a default path.
    pub fn open(path: Option<PathBuf>) -> Result<InvariantCache> {
        let path = path.or_else(|| std::env::var_os("QTANGLE_CACHE").map(PathBuf::from));
        let mut map = HashMap::new();
        if let Some(p) = &path {
            if p.exists() {
                for line in std::fs::read_to_string(p)?.lines() {
                    let fields: Vec<&str> = line.split('\t').collect();
                    if fields.len() == 4 {
                        map.insert(
                            (
                                fields[0].to_string(),
                                fields[1].to_string(),
                                fields[2].to_string(),
                            ),
                            fields[3].to_string(),
                        );
                    } else if !line.trim().is_empty() {
                        eprintln!("warning: skipping corrupt cache line: {line}");
                    }
                }
            }
        }
        Ok(InvariantCache {
            path,
            map: Mutex::new(map),
        })
    }

    pub fn get(&self, name: &str, qspec: &str, cspec: &str) -> Option<String> {
        self.map
            .lock()
            .unwrap()
            .get(&(name.to_string(), qspec.to_string(), cspec.to_string()))
            .cloned()
    }

    pub fn put(&self, name: &str, qspec: &str, cspec: &str, value: &str) {
        let key = (name.to_string(), qspec.to_string(), cspec.to_string());
        let mut map = self.map.lock().unwrap();
        if map.contains_key(&key) {
            return;
        }
        map.insert(key, value.to_string());
        if let Some(p) = &self.path {
            let mut line = String::new();
            let _ = write!(line, "{name}\t{qspec}\t{cspec}\t{value}\n");
            if let Ok(mut f) = std::fs::OpenOptions::new().create(true).append(true).open(p) {
                use std::io::Write;
                let _ = f.write_all(line.as_bytes());
            }
        }
    }

    pub fn entries(&self) -> Vec<((String, String, String), String)> {
        self.map
            .lock()
            .unwrap()
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.map.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_braid_knot_line() {
        let e = parse_knot_line("knot 3_1 braid 2 1 1 1").unwrap();
        assert_eq!(e.name, "3_1");
        assert_eq!(e.diagram.crossings.len(), 3);
    }

    #[test]
    fn parse_expr_knot_line() {
        let e = parse_knot_line("knot t braid 2 1 1 1 ! positive braid form").unwrap();
        assert_eq!(e.chirality_note.as_deref(), Some("positive braid form"));
        let e = parse_knot_line("knot k = Na(R(3,1,2))").unwrap();
        assert_eq!(e.diagram.crossings.len(), 6);
    }

    #[test]
    fn malformed_lines_name_the_line() {
        let bad = "knot 3_1 braid 2 1 1 1\nknot x braid 2 5\n";
        match KnotTable::parse(bad) {
            Err(Error::ParseAt { line, .. }) => assert_eq!(line, 2),
            Err(other) => panic!("expected ParseAt, got {other:?}"),
            Ok(_) => panic!("expected ParseAt, got success"),
        }
    }

    #[test]
    fn cache_round_trip_and_miss() {
        let c = InvariantCache::in_memory();
        assert!(c.get("3_1", "dihedral:3", "mochizuki:3").is_none());
        c.put("3_1", "dihedral:3", "mochizuki:3", "9 + 18u");
        assert_eq!(
            c.get("3_1", "dihedral:3", "mochizuki:3").as_deref(),
            Some("9 + 18u")
        );
    }

    #[test]
    fn cache_file_reload() {
        let dir = std::env::temp_dir().join(format!("qtangle-cache-{}", std::process::id()));
        let _ = std::fs::remove_file(&dir);
        let c = InvariantCache::open(Some(dir.clone())).unwrap();
        c.put("a", "b", "c", "1 + 2u");
        drop(c);
        let c2 = InvariantCache::open(Some(dir.clone())).unwrap();
        assert_eq!(c2.get("a", "b", "c").as_deref(), Some("1 + 2u"));
        let _ = std::fs::remove_file(&dir);
    }
}
