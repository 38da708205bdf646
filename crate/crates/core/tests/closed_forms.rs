//! Pipeline outputs against the closed-form exponent families, exhaustively
//! over 2 ≤ k < d ≤ 20, plus the bisection oracle for kcrit hypotheses.

use kplane_core::rat::{rat, to_f64, uint, Rat};
use kplane_core::{
    closed_form, derive_pipeline, hausdorff_bound, hausdorff_bound_via_pipelines,
    k_at_most_kcrit, kcrit, DimSeed, KcritKind, Operator, PipelineName,
};
use num_traits::One;

#[test]
fn sharpp_and_nonl2_match_closed_forms_up_to_d20() {
    for d in 3..=20u32 {
        for k in 2..d {
            for name in [PipelineName::SharpP, PipelineName::NonL2] {
                let trace = derive_pipeline(name, d, k, None)
                    .unwrap_or_else(|e| panic!("{} at ({d},{k}): {e}", name.name()));
                trace.validate().unwrap();
                let fin = trace.final_bound().unwrap();
                assert_eq!((fin.d(), fin.k()), (d, k));
                assert!(fin.eps_loss());
                let cf = closed_form(name, d, k, None).unwrap();
                assert!(
                    cf.matches(fin),
                    "{} at ({d},{k}): got {}, want p={} q={} alpha={:?}",
                    name.name(),
                    fin,
                    cf.p,
                    cf.q,
                    cf.alpha
                );
            }
        }
    }
}

#[test]
fn l2_matches_closed_form_where_applicable() {
    let mut hits = 0;
    for d in 4..=20u32 {
        for k in 3..d {
            let applicable = k_at_most_kcrit(d, k, KcritKind::KatzTao);
            let result = derive_pipeline(PipelineName::L2, d, k, None);
            assert_eq!(result.is_ok(), applicable, "L2 applicability at ({d},{k})");
            if let Ok(trace) = result {
                trace.validate().unwrap();
                let fin = trace.final_bound().unwrap();
                let cf = closed_form(PipelineName::L2, d, k, None).unwrap();
                assert!(cf.matches(fin), "L2 at ({d},{k}): got {}", fin);
                hits += 1;
            }
        }
    }
    // k = 3 admits d >= 8, k = 4 admits d >= 14, k >= 5 needs d >= 24.
    assert_eq!(hits, 13 + 7, "admissible L2 count on 2 <= k < d <= 20");
}

#[test]
fn nak_instance_14_5_j1_with_bisection_oracle() {
    // Hypothesis k−j = 4 > kcrit(13): the bisection root must confirm the
    // exact predicate used by the pipeline ((7/3)*4 + 4 = 40/3 > 13).
    let root = kcrit(13, KcritKind::KatzTao).unwrap();
    assert!(4.0 > root, "kcrit(13) = {root}");
    assert!(!k_at_most_kcrit(13, 4, KcritKind::KatzTao));

    let trace = derive_pipeline(PipelineName::NakTheorem, 14, 5, Some(1)).unwrap();
    trace.validate().unwrap();
    let fin = trace.final_bound().unwrap();
    assert_eq!(fin.operator(), Operator::MaximalPlane);
    assert_eq!((fin.d(), fin.k()), (14, 5));
    assert_eq!(*fin.p(), rat(13, 3));
    assert_eq!(fin.q().as_finite().unwrap(), &rat(13, 3));
    assert!(fin.support_unit_ball());
}

#[test]
fn nak_closed_form_on_admissible_range() {
    for d in 5..=20u32 {
        for k in 4..d {
            for j in 0..=(k - 4) {
                let trace = match derive_pipeline(PipelineName::NakTheorem, d, k, Some(j)) {
                    Ok(t) => t,
                    Err(_) => continue, // hypothesis failures are their own test
                };
                trace.validate().unwrap();
                let fin = trace.final_bound().unwrap();
                let cf = closed_form(PipelineName::NakTheorem, d, k, Some(j)).unwrap();
                assert!(cf.matches(fin), "nak at ({d},{k},j={j}): got {}", fin);
            }
        }
    }
}

#[test]
fn kcrit_bisection_satisfies_defining_equation() {
    for d in 3..=24u32 {
        for kind in [KcritKind::Bourgain, KcritKind::KatzTao] {
            let k = kcrit(d, kind).unwrap();
            let lhs = match kind {
                KcritKind::Bourgain => (k - 1.0).exp2() + k,
                KcritKind::KatzTao => (7.0 / 3.0) * (k - 2.0).exp2() + k,
            };
            assert!((lhs - d as f64).abs() < 1e-10, "d={d} {kind:?}: lhs={lhs}");
        }
    }
    assert_eq!(kcrit(7, KcritKind::Bourgain).unwrap(), 3.0);
    assert_eq!(kcrit(4, KcritKind::Bourgain).unwrap(), 2.0);
    let kt7 = kcrit(7, KcritKind::KatzTao).unwrap();
    assert!(kt7 > 2.0 && kt7 < 3.0);
}

#[test]
fn dimension_formula_equals_pipeline_crosscheck_up_to_d20() {
    for d in 3..=20u32 {
        for k in 2..d {
            for seed in [DimSeed::KatzTao, DimSeed::Wolff] {
                let formula = hausdorff_bound(d, k, seed).unwrap();
                let chains = hausdorff_bound_via_pipelines(d, k, seed).unwrap();
                assert_eq!(formula, chains, "d={d} k={k} seed={seed:?}");
                assert!(formula <= uint(d));
                assert!(formula > Rat::one());
                // Sanity against the float picture.
                assert!(to_f64(&formula) <= d as f64 + 1e-9);
            }
        }
    }
}

#[test]
fn traces_are_replayable() {
    // (13, 6, j=2) satisfies k−j = 4 > kcrit(11) since (7/3)·4 + 4 > 11.
    let a = derive_pipeline(PipelineName::NakTheorem, 13, 6, Some(2)).unwrap();
    let b = derive_pipeline(PipelineName::NakTheorem, 13, 6, Some(2)).unwrap();
    assert_eq!(a, b);
    a.validate().unwrap();
}
