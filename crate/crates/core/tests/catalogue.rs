//! Every catalogue entry against its presentations, pictures and fixtures.

use std::path::PathBuf;

use steen_core::catalogue::{get_module, names, verify_catalogue};
use steen_core::milnor::{antipode_sq, SubalgebraSpec};
use steen_core::module::{find_isomorphism, parse_module, write_module};

fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join("catalogue")
        .join(format!("{name}.module"))
}

#[test]
fn every_entry_passes_its_cross_checks() {
    let mut failed = Vec::new();
    for v in verify_catalogue() {
        for (label, ok) in &v.checks {
            println!("{:<10} {:<4} {label}", v.name, if *ok { "ok" } else { "FAIL" });
        }
        if !v.passed() {
            failed.push(v.name);
        }
    }
    assert!(failed.is_empty(), "failing entries: {failed:?}");
}

/// Set `STEEN_BLESS=1` to rewrite the fixture files.
#[test]
fn entries_match_golden_files() {
    let bless = std::env::var_os("STEEN_BLESS").is_some();
    for name in names() {
        let text = write_module(&get_module(&name).unwrap());
        let path = fixture_path(&name);
        if bless {
            std::fs::create_dir_all(path.parent().unwrap()).unwrap();
            std::fs::write(&path, &text).unwrap();
            continue;
        }
        let golden = std::fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("{}: {e} (run with STEEN_BLESS=1)", path.display()));
        assert_eq!(text, golden, "{name} differs from {}", path.display());
        let parsed = parse_module(&golden).unwrap();
        assert_eq!(write_module(&parsed), golden);
    }
}

#[test]
fn jokers_are_dual_up_to_shift() {
    for (n, shift) in [(1, 4), (2, 8), (3, 16)] {
        let zero = get_module(&format!("joker({n})0")).unwrap();
        let one = get_module(&format!("joker({n})1")).unwrap();
        let dual = zero.dualize().unwrap().shift(shift);
        assert!(find_isomorphism(&dual, &one).unwrap().is_some(), "n = {n}");
        assert!(find_isomorphism(&zero, &one).unwrap().is_none(), "n = {n}");
    }
}

#[test]
fn both_extensions_restrict_to_the_joker() {
    for n in 1..=3u32 {
        let joker = get_module(&format!("joker({n})")).unwrap();
        for e in 0..2 {
            let ext = get_module(&format!("joker({n}){e}")).unwrap();
            let r = ext.restrict(SubalgebraSpec::An(n)).unwrap();
            assert!(find_isomorphism(&r, &joker).unwrap().is_some(), "joker({n}){e}");
        }
    }
}

#[test]
fn conjugate_top_square_acts_on_extension_zero() {
    for n in 1..=3u32 {
        let m = get_module(&format!("joker({n})0")).unwrap();
        let chi = antipode_sq(1 << (n + 1)).unwrap();
        let image = m.act(&chi, &m.class("x0").unwrap()).unwrap();
        assert!(!image.is_zero(), "n = {n}");
    }
}

#[test]
fn double_duals_come_back() {
    for name in names() {
        let m = get_module(&name).unwrap();
        let dd = m.dualize().unwrap().dualize().unwrap();
        assert!(find_isomorphism(&dd, &m).unwrap().is_some(), "{name}");
    }
}

#[test]
fn whiskered_duals_have_no_bottom_sq4() {
    let m = get_module("jokerPP1").unwrap();
    assert!(m.sq_image(4, 0).is_zero());
    let m = get_module("joker2PP1").unwrap();
    assert!(m.sq_image(8, 0).is_zero());
}

#[test]
fn large_jokers_are_doubles() {
    for n in 4..=8u32 {
        let m = get_module(&format!("joker({n})")).unwrap();
        let s = 1 << (n - 1);
        assert_eq!(
            m.graded_dimensions(),
            (0..5).map(|i| (i * s, 1)).collect::<Vec<_>>(),
            "n = {n}"
        );
        assert_eq!(m.algebra(), SubalgebraSpec::An(n));
    }
}
