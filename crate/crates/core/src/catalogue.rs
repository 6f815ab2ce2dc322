//! Named modules: the Jokers, their doubles and A-module extensions, the
//! whiskered variants, the `W_r` modules of the `kO` Whitehead tower, and
//! `A(1)` itself.
//!
//! Every entry is built from a presentation (cyclic quotient, doubling, dual,
//! tensor product or extension) and cross-checked against a table typed in
//! from the standard pictures, where a vertical edge of length `k` is `Sq^k`.

use std::collections::HashMap;
use std::sync::{LazyLock, RwLock};

use thiserror::Error;

use crate::milnor::{sq_word, AlgebraElement, MilnorMonomial, SubalgebraSpec};
use crate::module::{
    cell_module, cyclic_quotient, extension_enumerate, find_isomorphism, trivial_module, FiniteModule,
    ModuleError, DEFAULT_FREE_SLOT_LIMIT,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogueError {
    #[error("no catalogue entry named `{0}`; try `list`")]
    Unknown(String),
    #[error("building `{name}`: {source}")]
    Build { name: String, source: ModuleError },
}

/// Largest `n` for which `joker(n)` is catalogued.
pub const MAX_JOKER: u32 = 8;

/// Catalogue names in display order.
pub fn names() -> Vec<String> {
    let mut out: Vec<String> = ["joker", "joker0", "joker1"].iter().map(|s| s.to_string()).collect();
    out.extend((2..=MAX_JOKER).map(|n| format!("joker({n})")));
    for n in 2..=3 {
        out.push(format!("joker({n})0"));
        out.push(format!("joker({n})1"));
    }
    out.extend(
        ["jokerP", "jokerP1", "jokerPP1", "joker2P1", "joker2PP1", "w0", "w1", "w2", "w4", "a1"]
            .iter()
            .map(|s| s.to_string()),
    );
    out
}

/// One-line description of how an entry is built.
pub fn recipe(name: &str) -> Result<String, CatalogueError> {
    let key = canonical(name)?;
    Ok(match key.as_str() {
        "joker" => "A(1)/A(1){Sq^3}".into(),
        "joker0" => "extension of joker to A with Sq^4 x0 = 0".into(),
        "joker1" => "extension of joker to A with Sq^4 x0 = x4".into(),
        "jokerP" => "A(1)/A(1){Sq^2 Sq^3}".into(),
        "jokerP1" => "extension of jokerP to A with Sq^4 x0 = x4".into(),
        "jokerPP1" => "D(jokerP1)[4]".into(),
        "joker2P1" => "A(2)/A(2){Sq(1), Sq(0,1), Sq(0,0,1), Sq^4 Sq^6}, extended to A with Sq^8 x0 = x8".into(),
        "joker2PP1" => "D(joker2P1)[8]".into(),
        "w0" => "F_2".into(),
        "w1" => "A(1)/A(1){Sq^2}".into(),
        "w2" => "table only".into(),
        "w4" => "A(1)/A(1){Sq^1, Sq^2 Sq^3}".into(),
        "a1" => "A(1)".into(),
        other => match joker_index(other) {
            Some((n, None)) => format!("Delta^({})(joker) over A({n})", n - 1),
            Some((n, Some(e))) => format!(
                "extension of joker({n}) to A with Sq^{} x0 {}",
                1 << (n + 1),
                if e == 0 { "= 0".to_string() } else { format!("= x{}", 1 << (n + 1)) }
            ),
            None => unreachable!("canonical names are covered"),
        },
    })
}

/// Parses `joker(n)` / `joker(n)e`.
fn joker_index(name: &str) -> Option<(u32, Option<u32>)> {
    let rest = name.strip_prefix("joker(")?;
    let close = rest.find(')')?;
    let n: u32 = rest[..close].parse().ok()?;
    match &rest[close + 1..] {
        "" => Some((n, None)),
        "0" => Some((n, Some(0))),
        "1" => Some((n, Some(1))),
        _ => None,
    }
}

fn canonical(name: &str) -> Result<String, CatalogueError> {
    let name = name.trim();
    let key = match joker_index(name) {
        Some((1, None)) => "joker".to_string(),
        Some((1, Some(e))) => format!("joker{e}"),
        _ => name.to_string(),
    };
    if names().contains(&key) {
        Ok(key)
    } else {
        Err(CatalogueError::Unknown(name.to_string()))
    }
}

static CACHE: LazyLock<RwLock<HashMap<String, FiniteModule>>> = LazyLock::new(Default::default);

/// The validated module for a catalogue name.
pub fn get_module(name: &str) -> Result<FiniteModule, CatalogueError> {
    let key = canonical(name)?;
    if let Some(m) = CACHE.read().expect("catalogue cache poisoned").get(&key) {
        return Ok(m.clone());
    }
    let m = build(&key).map_err(|source| CatalogueError::Build {
        name: key.clone(),
        source,
    })?;
    CACHE
        .write()
        .expect("catalogue cache poisoned")
        .insert(key, m.clone());
    Ok(m)
}

fn full() -> SubalgebraSpec {
    SubalgebraSpec::full()
}

fn sq(k: u32) -> AlgebraElement {
    AlgebraElement::sq(k)
}

fn milnor(e: &[u32]) -> AlgebraElement {
    MilnorMonomial::new(e.to_vec()).into()
}

/// The extension of `m` to `A` whose action of `Sq^{top}` on the bottom
/// class is zero (`nonzero = false`) or not.
fn extension_with(m: &FiniteModule, top: u32, nonzero: bool, name: &str) -> Result<FiniteModule, ModuleError> {
    let bottom = 0;
    let found: Vec<FiniteModule> = extension_enumerate(m, full(), DEFAULT_FREE_SLOT_LIMIT)?
        .into_iter()
        .filter(|e| e.sq_image(top, bottom).is_zero() != nonzero)
        .collect();
    match found.as_slice() {
        [one] => Ok(one.clone().renamed(name)),
        _ => Err(ModuleError::Invalid {
            name: name.to_string(),
            reason: format!("expected one extension, found {}", found.len()),
        }),
    }
}

fn build(name: &str) -> Result<FiniteModule, ModuleError> {
    let joker = || get_module("joker").map_err(unwrap_build);
    Ok(match name {
        "joker" => cyclic_quotient("joker", SubalgebraSpec::An(1), &[sq(3)])?,
        "joker0" => extension_with(&joker()?, 4, false, "joker0")?,
        "joker1" => extension_with(&joker()?, 4, true, "joker1")?,
        "jokerP" => cyclic_quotient("jokerP", SubalgebraSpec::An(1), &[sq_word(&[2, 3])])?,
        "jokerP1" => {
            let base = get_module("jokerP").map_err(unwrap_build)?;
            extension_with(&base, 4, true, "jokerP1")?
        }
        "jokerPP1" => {
            let m = get_module("jokerP1").map_err(unwrap_build)?;
            m.dualize()?.shift(4).renamed("jokerPP1")
        }
        "joker2P1" => {
            let base = cyclic_quotient("joker2P", SubalgebraSpec::An(2), &joker2p_relations())?;
            extension_with(&base, 8, true, "joker2P1")?
        }
        "joker2PP1" => {
            let m = get_module("joker2P1").map_err(unwrap_build)?;
            m.dualize()?.shift(8).renamed("joker2PP1")
        }
        "w0" => trivial_module(SubalgebraSpec::An(1), 0).renamed("w0"),
        "w1" => cyclic_quotient("w1", SubalgebraSpec::An(1), &[sq(2)])?,
        "w2" => hand_table("w2").expect("w2 has a table")?,
        "w4" => cyclic_quotient("w4", SubalgebraSpec::An(1), &[sq(1), sq_word(&[2, 3])])?,
        "a1" => cyclic_quotient("a1", SubalgebraSpec::An(1), &[])?,
        other => match joker_index(other) {
            Some((n, None)) => joker()?.double(n - 1)?.renamed(other),
            Some((n, Some(e))) => {
                let base = get_module(&format!("joker({n})")).map_err(unwrap_build)?;
                extension_with(&base, 1 << (n + 1), e == 1, other)?
            }
            None => unreachable!("canonical names are covered"),
        },
    })
}

fn unwrap_build(e: CatalogueError) -> ModuleError {
    match e {
        CatalogueError::Build { source, .. } => source,
        CatalogueError::Unknown(n) => ModuleError::UnknownClass(n),
    }
}

/// The relations of the whiskered double Joker: `P^0_1`, `P^0_2`, `P^0_3`
/// and `Sq^4 Sq^6`. Unlike for `Joker(2)`, `P^0_3` is needed: without it the
/// quotient has extra classes in degrees 7 and 9.
pub fn joker2p_relations() -> Vec<AlgebraElement> {
    vec![milnor(&[1]), milnor(&[0, 1]), milnor(&[0, 0, 1]), sq_word(&[4, 6])]
}

/// The two cyclic `A(n)` presentations of `Joker(n)` for `n = 2, 3`.
pub fn joker_presentations(n: u32) -> Vec<Vec<AlgebraElement>> {
    match n {
        // P^0_1, P^0_2, Sq^6, and again with the redundant P^0_3
        2 => vec![
            vec![milnor(&[1]), milnor(&[0, 1]), sq(6)],
            vec![milnor(&[1]), milnor(&[0, 1]), sq(6), milnor(&[0, 0, 1])],
        ],
        // P^0_1, P^1_1, P^1_2, Sq^12
        3 => vec![vec![milnor(&[1]), milnor(&[2]), milnor(&[0, 2]), sq(12)]],
        _ => Vec::new(),
    }
}

/// Classes `x<d>` for the listed degrees, primed on repeats.
fn classes(degrees: &[i32]) -> Vec<(String, i32)> {
    let mut seen: HashMap<i32, usize> = HashMap::new();
    degrees
        .iter()
        .map(|&d| {
            let c = seen.entry(d).or_insert(0);
            let id = format!("x{d}{}", "'".repeat(*c));
            *c += 1;
            (id, d)
        })
        .collect()
}

type Edges = Vec<(u32, &'static str, &'static str)>;

fn table(
    name: &str,
    spec: SubalgebraSpec,
    degrees: &[i32],
    edges: &[(u32, String, String)],
) -> Result<FiniteModule, ModuleError> {
    let mut grouped: Vec<(u32, String, Vec<String>)> = Vec::new();
    for (k, a, b) in edges {
        match grouped.iter_mut().find(|g| g.0 == *k && g.1 == *a) {
            Some(g) => g.2.push(b.clone()),
            None => grouped.push((*k, a.clone(), vec![b.clone()])),
        }
    }
    FiniteModule::from_generators(name, spec, &classes(degrees), &grouped)?.validated()
}

fn owned(edges: Edges) -> Vec<(u32, String, String)> {
    edges.into_iter().map(|(k, a, b)| (k, a.to_string(), b.to_string())).collect()
}

/// The Joker picture scaled by `s = 2^{n-1}`: `Sq^s` edges `0-s`, `3s-4s` and
/// `Sq^{2s}` edges `0-2s`, `s-3s`, `2s-4s`.
fn joker_edges(n: u32) -> Vec<(u32, String, String)> {
    let s = 1i32 << (n - 1);
    let x = |m: i32| format!("x{}", m * s);
    vec![
        (s as u32, x(0), x(1)),
        (s as u32, x(3), x(4)),
        (2 * s as u32, x(0), x(2)),
        (2 * s as u32, x(1), x(3)),
        (2 * s as u32, x(2), x(4)),
    ]
}

fn joker_degrees(n: u32) -> Vec<i32> {
    (0..5).map(|m| m << (n - 1)).collect()
}

/// The hand-entered table for an entry, or `None` for `joker(n)` with
/// `n >= 4`, whose tables are compared entry by entry instead (see
/// [`joker_generator_edges`]).
pub fn hand_table(name: &str) -> Option<Result<FiniteModule, ModuleError>> {
    let key = canonical(name).ok()?;
    let a1 = SubalgebraSpec::An(1);
    let a2 = SubalgebraSpec::An(2);
    Some(match key.as_str() {
        // the Joker: Sq^1 on 0-1 and 3-4, Sq^2 on 0-2, 1-3, 2-4
        "joker" | "w2" => table(&key, a1, &joker_degrees(1), &joker_edges(1)),
        "joker0" | "joker1" => {
            let mut e = joker_edges(1);
            if key == "joker1" {
                e.push((4, "x0".into(), "x4".into()));
            }
            table(&key, full(), &joker_degrees(1), &e)
        }
        // Joker': the Joker with a whisker x3' hanging off x2 by Sq^1
        "jokerP" | "jokerP1" => {
            let mut e = owned(vec![
                (1, "x0", "x1"),
                (1, "x2", "x3'"),
                (1, "x3", "x4"),
                (2, "x0", "x2"),
                (2, "x1", "x3"),
                (2, "x2", "x4"),
            ]);
            let spec = if key == "jokerP1" {
                e.push((4, "x0".into(), "x4".into()));
                full()
            } else {
                a1
            };
            table(&key, spec, &[0, 1, 2, 3, 3, 4], &e)
        }
        // Joker'': whisker x1' mapping to x2 by Sq^1; drawn over A(1)
        "jokerPP1" => table(
            &key,
            a1,
            &[0, 1, 1, 2, 3, 4],
            &owned(vec![
                (1, "x0", "x1"),
                (1, "x1'", "x2"),
                (1, "x3", "x4"),
                (2, "x0", "x2"),
                (2, "x1", "x3"),
                (2, "x2", "x4"),
            ]),
        ),
        // Joker(2)': double Joker with whisker x6' hanging off x4 by Sq^2,
        // plus Sq^8 from bottom to top
        "joker2P1" => table(
            &key,
            full(),
            &[0, 2, 4, 6, 6, 8],
            &owned(vec![
                (2, "x0", "x2"),
                (2, "x4", "x6'"),
                (2, "x6", "x8"),
                (4, "x0", "x4"),
                (4, "x2", "x6"),
                (4, "x4", "x8"),
                (8, "x0", "x8"),
            ]),
        ),
        // Joker(2)'': whisker x2' mapping to x4 by Sq^2; drawn over A(2)
        "joker2PP1" => table(
            &key,
            a2,
            &[0, 2, 2, 4, 6, 8],
            &owned(vec![
                (2, "x0", "x2"),
                (2, "x2'", "x4"),
                (2, "x6", "x8"),
                (4, "x0", "x4"),
                (4, "x2", "x6"),
                (4, "x4", "x8"),
            ]),
        ),
        "w0" => table(&key, a1, &[0], &[]),
        // W_1: Sq^1 on 0-1, Sq^2 on 1-3
        "w1" => table(&key, a1, &[0, 1, 3], &owned(vec![(1, "x0", "x1"), (2, "x1", "x3")])),
        // W_4: Sq^2 on 0-2, Sq^1 on 2-3
        "w4" => table(&key, a1, &[0, 2, 3], &owned(vec![(2, "x0", "x2"), (1, "x2", "x3")])),
        // A(1): x3 = Sq^2 Sq^1 x0, x3' = Sq^1 Sq^2 x0
        "a1" => table(
            &key,
            a1,
            &[0, 1, 2, 3, 3, 4, 5, 6],
            &owned(vec![
                (1, "x0", "x1"),
                (1, "x2", "x3'"),
                (1, "x3", "x4"),
                (1, "x5", "x6"),
                (2, "x0", "x2"),
                (2, "x1", "x3"),
                (2, "x2", "x4"),
                (2, "x3'", "x5"),
                (2, "x4", "x6"),
            ]),
        ),
        other => match joker_index(other) {
            Some((n, None)) if n <= 3 => table(other, SubalgebraSpec::An(n), &joker_degrees(n), &joker_edges(n)),
            Some((n, Some(e))) => {
                let mut edges = joker_edges(n);
                if e == 1 {
                    edges.push((1 << (n + 1), "x0".into(), format!("x{}", 1 << (n + 1))));
                }
                table(other, full(), &joker_degrees(n), &edges)
            }
            _ => return None,
        },
    })
}

/// Generator edges `(Sq^k, source id, target id)` of `joker(n)` as drawn.
pub fn joker_generator_edges(n: u32) -> Vec<(u32, String, String)> {
    joker_edges(n)
}

/// The cell modules whose tensor product is `Joker'_1[4]`:
/// `S^3 u_eta e^5 u_2 e^6` and `S^1 u_2 e^2`.
pub fn whisker_cells() -> Result<(FiniteModule, FiniteModule), ModuleError> {
    Ok((
        cell_module("X", full(), &[("x3", 3), ("x5", 5), ("x6", 6)], &[(2, "x3", "x5"), (1, "x5", "x6")])?,
        cell_module("M", full(), &[("y1", 1), ("y2", 2)], &[(1, "y1", "y2")])?,
    ))
}

/// The cell modules whose tensor product is `Joker(2)'_1[8]`:
/// `S^5 u_nu e^9 u_eta e^11` and `S^3 u_eta e^5`.
pub fn double_whisker_cells() -> Result<(FiniteModule, FiniteModule), ModuleError> {
    Ok((
        cell_module("Y", full(), &[("x5", 5), ("x9", 9), ("x11", 11)], &[(4, "x5", "x9"), (2, "x9", "x11")])?,
        cell_module("C", full(), &[("y3", 3), ("y5", 5)], &[(2, "y3", "y5")])?,
    ))
}

#[derive(Debug, Clone)]
pub struct EntryVerdict {
    pub name: String,
    /// `(description, passed)` per check.
    pub checks: Vec<(String, bool)>,
}

impl EntryVerdict {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.1)
    }
}

fn iso(a: &FiniteModule, b: &FiniteModule) -> bool {
    matches!(find_isomorphism(a, b), Ok(Some(_)))
}

/// Runs every cross-check for one entry.
pub fn verify_entry(name: &str) -> Result<EntryVerdict, CatalogueError> {
    let key = canonical(name)?;
    let m = get_module(&key)?;
    let mut checks = vec![("construction validates".to_string(), m.validate().valid)];
    let mut check = |label: String, ok: bool| checks.push((label, ok));

    match hand_table(&key) {
        Some(Ok(hand)) => {
            check("hand table validates".into(), hand.validate().valid);
            // pictures drawn over A(1) or A(2) are compared after restriction
            let built = if hand.algebra().is_full() || hand.algebra() == m.algebra() {
                Ok(m.clone())
            } else {
                m.restrict(hand.algebra())
            };
            check(
                format!("construction ≅ hand table over {}", hand.algebra()),
                built.map(|b| iso(&b, &hand)).unwrap_or(false),
            );
        }
        Some(Err(e)) => check(format!("hand table builds ({e})"), false),
        None => {
            let n = joker_index(&key).map(|(n, _)| n).unwrap_or(0);
            let matches = joker_generator_edges(n).iter().all(|(k, a, b)| {
                let (Ok(i), Ok(j)) = (m.class_index(a), m.class_index(b)) else {
                    return false;
                };
                m.sq_image(*k, i) == crate::gf2::F2Vector::unit(m.dim(), j)
            });
            let counted: usize = (0..n + 1)
                .map(|i| (0..m.dim()).map(|x| m.sq_image(1 << i, x).count_ones()).sum::<usize>())
                .sum();
            check("generator tables match the picture".into(), matches && counted == 5);
        }
    }

    if let Some((n, None)) = joker_index(&key) {
        for (p, rels) in joker_presentations(n).iter().enumerate() {
            let ok = cyclic_quotient(&key, SubalgebraSpec::An(n), rels)
                .map(|c| iso(&c, &m))
                .unwrap_or(false);
            check(format!("≅ cyclic presentation {}", p + 1), ok);
        }
    }
    match key.as_str() {
        "w2" => check("≅ joker".into(), iso(&m, &get_module("joker")?)),
        "jokerP1" => {
            let ok = whisker_cells()
                .and_then(|(x, y)| x.tensor(&y))
                .map(|t| iso(&t.shift(-4), &m))
                .unwrap_or(false);
            check("≅ (S^3 u_eta e^5 u_2 e^6) ⊗ (S^1 u_2 e^2), desuspended 4".into(), ok);
        }
        "joker2P1" => {
            let ok = double_whisker_cells()
                .and_then(|(x, y)| x.tensor(&y))
                .map(|t| iso(&t.shift(-8), &m))
                .unwrap_or(false);
            check("≅ (S^5 u_nu e^9 u_eta e^11) ⊗ (S^3 u_eta e^5), desuspended 8".into(), ok);
        }
        _ => {}
    }
    Ok(EntryVerdict { name: key, checks })
}

/// Verdicts for every entry.
pub fn verify_catalogue() -> Vec<EntryVerdict> {
    names()
        .iter()
        .map(|n| {
            verify_entry(n).unwrap_or_else(|e| EntryVerdict {
                name: n.clone(),
                checks: vec![(e.to_string(), false)],
            })
        })
        .collect()
}
