//! The obstruction to realizing `Joker(n)` for `n >= 4`.

use steen_core::obstruction::{
    admissible_pairs, check_hypotheses, obstruction_report, Conclusion, ObstructionError, TermVerdict,
};

#[test]
fn four_in_detail() {
    let r = obstruction_report(4).unwrap();
    assert_eq!(r.k, 3);
    assert_eq!(r.u, "x8");
    assert_eq!(r.terms.len(), 7);
    let live: Vec<_> = r.terms.iter().filter(|t| t.rank > 0).collect();
    assert_eq!(live.len(), 1);
    let t = live[0];
    assert_eq!((t.i, t.j, t.deg_phi_u, t.deg_alpha), (0, 3, 16, 8));
    assert_eq!(t.profile_stable, Some(true));
    assert_eq!(t.verdict, TermVerdict::ActionsVanish(4));
    assert_eq!(r.target, "x24");
    assert!(r.target_nonzero);
    assert_eq!(r.conclusion, Conclusion::NonRealizable);
    assert!(r.records().starts_with("4 0 0 9 0 15 vanishes:rank0\n"));
    assert!(r.records().contains("4 0 3 16 1 8 vanishes:alpha4\n"));
}

#[test]
fn hypotheses_hold() {
    let h = check_hypotheses(4).unwrap();
    assert_eq!(h.len(), 4);
    assert!(h.iter().all(|c| c.vanishes));
    // Sq^8 u lands on a nonzero degree; it vanishes by the action itself
    assert_eq!((h[3].degree, h[3].rank), (16, 1));
    assert!(h[..3].iter().all(|c| c.rank == 0));
    assert!(check_hypotheses(5).unwrap().iter().all(|c| c.vanishes));
    assert_eq!(check_hypotheses(3).unwrap_err(), ObstructionError::TooSmall(3));
}

#[test]
fn no_jokers_from_four_to_eight() {
    for n in 4..=8 {
        let r = obstruction_report(n).unwrap();
        assert_eq!(r.conclusion, Conclusion::NonRealizable, "n = {n}\n{r}");
        assert!(r.soundness_gate_passes());
        assert!(r.hypotheses_hold());
        assert_eq!(r.terms.len(), admissible_pairs(n - 1).len());
        // only (0, n - 1) reaches a nonzero degree, namely 2^n
        let live: Vec<(u32, u32, i32)> =
            r.terms.iter().filter(|t| t.rank > 0).map(|t| (t.i, t.j, t.deg_phi_u)).collect();
        assert_eq!(live, vec![(0, n - 1, 1 << n)], "n = {n}");
        for t in &r.terms {
            assert_eq!(t.deg_phi_u + t.deg_alpha as i32, (1 << (n - 1)) + (1 << n));
            assert!(t.deg_alpha >= 1 && t.deg_alpha < 1 << n);
        }
    }
}

#[test]
fn larger_n() {
    for n in 9..=11 {
        assert_eq!(obstruction_report(n).unwrap().conclusion, Conclusion::NonRealizable, "n = {n}");
    }
}

/// About four billion Milnor basis elements in degree 2048.
#[test]
#[ignore = "sweeps ~4e9 basis elements; run with --ignored"]
fn twelve() {
    assert_eq!(obstruction_report(12).unwrap().conclusion, Conclusion::NonRealizable);
}
