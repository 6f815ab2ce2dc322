//! Module-definition files.
//!
//! ```text
//! module joker over A(1)
//! gen x0 0
//! gen x1 1
//! sq 1 x0 = x1
//! ```
//!
//! One `gen` line per class, one `sq` line per nonzero table entry; `#` starts
//! a comment. The JSON form carries the same fields.

use serde::{Deserialize, Serialize};

use super::{FiniteModule, ModuleError};
use crate::milnor::SubalgebraSpec;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct ModuleFile {
    name: String,
    algebra: String,
    gens: Vec<GenLine>,
    sq: Vec<SqLine>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct GenLine {
    id: String,
    degree: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct SqLine {
    k: u32,
    source: String,
    targets: Vec<String>,
}

impl ModuleFile {
    fn from_module(m: &FiniteModule) -> Self {
        let mut sq = Vec::new();
        for (i, b) in m.basis().iter().enumerate() {
            for k in 1..=m.span() {
                let image = m.sq_image(k, i);
                if !image.is_zero() {
                    sq.push(SqLine {
                        k,
                        source: b.id.clone(),
                        targets: image.ones().map(|j| m.basis()[j].id.clone()).collect(),
                    });
                }
            }
        }
        ModuleFile {
            name: m.name().to_string(),
            algebra: m.algebra().to_string(),
            gens: m
                .basis()
                .iter()
                .map(|b| GenLine {
                    id: b.id.clone(),
                    degree: b.degree,
                })
                .collect(),
            sq,
        }
    }

    fn into_module(self) -> Result<FiniteModule, ModuleError> {
        let algebra: SubalgebraSpec = self.algebra.parse()?;
        let classes: Vec<(&str, i32)> = self.gens.iter().map(|g| (g.id.as_str(), g.degree)).collect();
        let entries: Vec<(u32, &str, Vec<&str>)> = self
            .sq
            .iter()
            .map(|l| (l.k, l.source.as_str(), l.targets.iter().map(String::as_str).collect()))
            .collect();
        FiniteModule::from_tables(&self.name, algebra, &classes, &entries)
    }
}

/// Serializes every nonzero table entry; parsing the output gives back the
/// same tables.
pub fn write_module(m: &FiniteModule) -> String {
    let f = ModuleFile::from_module(m);
    let mut out = format!("module {} over {}\n", f.name, f.algebra);
    for g in &f.gens {
        out.push_str(&format!("gen {} {}\n", g.id, g.degree));
    }
    for l in &f.sq {
        out.push_str(&format!("sq {} {} = {}\n", l.k, l.source, l.targets.join(" + ")));
    }
    out
}

/// Parses the line format. The module is not validated.
pub fn parse_module(text: &str) -> Result<FiniteModule, ModuleError> {
    let err = |line: usize, message: String| ModuleError::Parse { line, message };
    let mut header: Option<(String, String)> = None;
    let mut gens = Vec::new();
    let mut sq = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        match words[0] {
            "module" => {
                if header.is_some() {
                    return Err(err(line_no, "second `module` line".into()));
                }
                let over = words
                    .iter()
                    .position(|w| *w == "over")
                    .ok_or_else(|| err(line_no, "expected `module <name> over <algebra>`".into()))?;
                if over < 2 || over + 1 >= words.len() {
                    return Err(err(line_no, "expected `module <name> over <algebra>`".into()));
                }
                header = Some((words[1..over].join(" "), words[over + 1..].join("")));
            }
            "gen" => {
                if words.len() != 3 {
                    return Err(err(line_no, "expected `gen <id> <degree>`".into()));
                }
                let degree = words[2]
                    .parse()
                    .map_err(|_| err(line_no, format!("bad degree `{}`", words[2])))?;
                gens.push(GenLine {
                    id: words[1].to_string(),
                    degree,
                });
            }
            "sq" => {
                if words.len() < 5 || words[3] != "=" {
                    return Err(err(line_no, "expected `sq <k> <id> = <id> [+ <id>]*`".into()));
                }
                let k: u32 = words[1]
                    .parse()
                    .ok()
                    .filter(|&k| k > 0)
                    .ok_or_else(|| err(line_no, format!("bad operation index `{}`", words[1])))?;
                let rhs = &words[4..];
                let mut targets = Vec::new();
                for (i, w) in rhs.iter().enumerate() {
                    match (i % 2, *w) {
                        (0, "+") => return Err(err(line_no, "dangling `+`".into())),
                        (0, "0") if rhs.len() == 1 => {}
                        (0, id) => targets.push(id.to_string()),
                        (1, "+") => {}
                        (_, other) => return Err(err(line_no, format!("expected `+`, found `{other}`"))),
                    }
                }
                if rhs.len().is_multiple_of(2) {
                    return Err(err(line_no, "dangling `+`".into()));
                }
                sq.push(SqLine {
                    k,
                    source: words[2].to_string(),
                    targets,
                });
            }
            other => return Err(err(line_no, format!("unknown directive `{other}`"))),
        }
    }
    let (name, algebra) = header.ok_or_else(|| err(0, "missing `module` line".into()))?;
    ModuleFile { name, algebra, gens, sq }.into_module()
}

pub fn to_json(m: &FiniteModule) -> String {
    serde_json::to_string_pretty(&ModuleFile::from_module(m)).expect("module files always serialize")
}

pub fn from_json(text: &str) -> Result<FiniteModule, ModuleError> {
    let f: ModuleFile = serde_json::from_str(text).map_err(|e| ModuleError::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    f.into_module()
}

#[cfg(test)]
mod tests {
    use super::*;

    const JOKER: &str = "\
# the Joker
module joker over A(1)
gen x0 0
gen x1 1
gen x2 2
gen x3 3
gen x4 4
sq 1 x0 = x1
sq 1 x3 = x4
sq 2 x0 = x2
sq 2 x1 = x3
sq 2 x2 = x4
sq 3 x1 = x4
";

    #[test]
    fn round_trips() {
        let m = parse_module(JOKER).unwrap();
        assert!(m.validate().valid);
        let text = write_module(&m);
        let again = parse_module(&text).unwrap();
        assert_eq!(write_module(&again), text);
        let json = from_json(&to_json(&m)).unwrap();
        assert_eq!(write_module(&json), text);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = "module m over A(1)\ngen x0 0\nsq 1 x0 = + x1\n";
        assert!(matches!(parse_module(bad), Err(ModuleError::Parse { line: 3, .. })));
        assert!(matches!(
            parse_module("module m over A(1)\ngen x0 zero\n"),
            Err(ModuleError::Parse { line: 2, .. })
        ));
        assert!(matches!(parse_module("frobnicate\n"), Err(ModuleError::Parse { line: 1, .. })));
        assert!(matches!(
            parse_module("module m over A(1)\ngen x0 0\nsq 1 x0 = y\n"),
            Err(ModuleError::UnknownClass(_))
        ));
    }
}
