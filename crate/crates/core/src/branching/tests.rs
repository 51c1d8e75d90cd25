use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::cohn::{parse_element, Element, Monomial};
use crate::fixtures;
use crate::graph::Graph;
use crate::sampling::{rng_with_seed, ElementSampler};
use crate::scalar::{rat, ratio, Rational};
use num_traits::{One, Zero};

type Q = QuadScalar;

fn arc(g: Graph) -> Arc<Graph> {
    Arc::new(g)
}

fn q(n: i64, d: i64) -> Q {
    Q::rational(ratio(n, d))
}

fn iv(l: Q, r: Q) -> IntervalSet {
    IntervalSet::interval(l, r)
}

fn elem(g: &Arc<Graph>, s: &str) -> Element {
    parse_element(g, s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

type Builder = fn(&Arc<Graph>) -> BranchingSystem;

fn builders() -> Vec<(&'static str, Builder)> {
    vec![
        ("standard", build_standard_system as Builder),
        ("rotation", build_rotation_system),
    ]
}

/// `(π(αβ*)φ)(x)` by chasing the single point `x` through the maps.
fn oracle_monomial(sys: &BranchingSystem, m: &Monomial, phi: &ModFunction, x: &Q) -> Rational {
    let mut y = x.clone();
    for &e in m.alpha().edges() {
        if !sys.r(e).contains(&y) {
            return rat(0);
        }
        y = sys.f(e).inverse().apply(&y).expect("R_e is the range of f_e");
    }
    for &e in m.beta().edges().iter().rev() {
        if !sys.d(sys.graph().rng(e)).contains(&y) {
            return rat(0);
        }
        y = sys.f(e).apply(&y).expect("D_rng(e) is the domain of f_e");
    }
    let v = m.beta().src();
    if !sys.d(v).contains(&y) {
        return rat(0);
    }
    phi.eval(&y)
}

fn sample_points(sys: &BranchingSystem, n: usize) -> Vec<Q> {
    let (l, r) = (sys.space().parts()[0].0.clone(), sys.space().parts().last().unwrap().1.clone());
    let width = r.clone() - l.clone();
    // irrational offset so samples avoid breakpoints of both builders
    let shift = (Q::sqrt2() - Q::one()) * q(1, 7 * n as i64);
    (0..n)
        .map(|i| l.clone() + width.clone() * q(i as i64, n as i64) + shift.clone())
        .collect()
}

// --- builders ------------------------------------------------------------

#[test]
fn standard_layout_examples() {
    let g = arc(fixtures::g2());
    let sys = build_standard_system(&g);
    let (v, w, e) = (g.vertex_id("v").unwrap(), g.vertex_id("w").unwrap(), g.edge_id("e").unwrap());
    assert_eq!(*sys.d(v), iv(q(0, 1), q(1, 1)));
    assert_eq!(*sys.d(w), iv(q(1, 1), q(2, 1)));
    assert_eq!(*sys.r(e), iv(q(0, 1), q(1, 1)));
    assert_eq!(sys.f(e).to_string(), "piece [1,2) 1 -1");

    let g = arc(fixtures::g2_cohn());
    let sys = build_standard_system(&g);
    assert_eq!(*sys.r(g.edge_id("e").unwrap()), iv(q(0, 1), q(1, 2)));

    let g = arc(fixtures::g1());
    let sys = build_standard_system(&g);
    assert_eq!(*sys.d(g.vertex_id("v").unwrap()), iv(q(0, 1), q(1, 1)));
}

#[test]
fn rotation_examples() {
    let g = arc(fixtures::g5p());
    let sys = build_rotation_system(&g);
    let (v, e) = (g.vertex_id("v").unwrap(), g.edge_id("e").unwrap());
    assert_eq!(*sys.d(v), iv(q(0, 1), q(1, 1)));
    assert_eq!(*sys.r(e), iv(q(0, 1), q(1, 1)));
    let f = sys.f(e);
    assert_eq!(f.pieces().len(), 2);
    assert_eq!(f.apply(&Q::zero()), Some(theta()));
    assert_eq!(f.apply(&(Q::int(2) - Q::sqrt2())), Some(Q::zero()));
    assert_eq!(f.to_string(), "piece [0,2-sqrt2) 1 -1+sqrt2 piece [2-sqrt2,1) 1 -2+sqrt2");
}

#[test]
fn builders_satisfy_axioms() {
    for (name, g) in fixtures::named() {
        let g = arc(g);
        for (kind, build) in builders() {
            let report = check_axioms(&build(&g));
            assert!(report.ok(), "{name}/{kind}: {report}");
        }
    }
}

#[test]
fn corrupted_systems_are_caught() {
    let g = arc(fixtures::g4());
    let mut sys = build_standard_system(&g);
    let f1 = g.edge_id("f1").unwrap();
    let elsewhere = sys.d(g.vertex_id("b").unwrap()).clone();
    sys.set_r(f1, elsewhere);
    let report = check_axioms(&sys);
    assert!(matches!(report.first(), Some(AxiomViolation::Axiom3 { edge, .. }) if edge == "f1"), "{report}");

    let g = arc(fixtures::g2());
    let mut sys = build_standard_system(&g);
    sys.set_r(g.edge_id("e").unwrap(), iv(q(0, 1), q(1, 2)));
    let report = check_axioms(&sys);
    assert!(matches!(report.first(), Some(AxiomViolation::Axiom4 { vertex, .. }) if vertex == "v"), "{report}");
}

#[test]
fn system_text_round_trips() {
    for (name, g) in fixtures::named() {
        let g = arc(g);
        for (kind, build) in builders() {
            let sys = build(&g);
            let text = sys.to_string();
            let back = parse_system(&g, &text).unwrap_or_else(|e| panic!("{name}/{kind}: {e}\n{text}"));
            assert_eq!(back, sys);
            assert_eq!(back.to_string(), text);
        }
    }
    let g = arc(fixtures::g2());
    assert!(matches!(
        parse_system(&g, "space [0,2)\nD v [0,1)\nD q [1,2)"),
        Err(BranchingError::Parse { line: 3, .. })
    ));
    assert!(parse_system(&g, "space [0,2)\nD v [0,1)\n").is_err());
}

// --- representation ------------------------------------------------------

#[test]
fn vertices_act_as_projections() {
    let g = arc(fixtures::g4());
    let sys = build_rotation_system(&g);
    let phi = ModFunction::from_pieces(vec![(q(1, 2), q(7, 2), rat(3))]);
    for v in g.vertices() {
        let x = Element::vertex(&g, v);
        assert_eq!(rep_apply(&sys, &x, &phi).unwrap(), phi.restrict(sys.d(v)));
    }
}

#[test]
fn rep_examples() {
    let g = arc(fixtures::g5p());
    let sys = build_rotation_system(&g);
    let phi = ModFunction::from_pieces(vec![(q(0, 1), q(1, 3), rat(1)), (q(1, 2), q(1, 1), rat(-2))]);
    let e = elem(&g, "e");
    let es = elem(&g, "e^");
    let v = elem(&g, "v");
    let composed = rep_apply(&sys, &es, &rep_apply(&sys, &e, &phi).unwrap()).unwrap();
    assert_eq!(composed, rep_apply(&sys, &v, &phi).unwrap());

    let g = arc(fixtures::g2());
    let sys = build_standard_system(&g);
    let phi = ModFunction::indicator(&iv(q(1, 1), q(2, 1)));
    let x = elem(&g, "e.e^");
    let out = rep_apply(&sys, &x, &phi).unwrap();
    assert!(out.is_zero());
    let m = x.terms().next().unwrap().0.clone();
    for p in sample_points(&sys, 20) {
        assert_eq!(out.eval(&p), oracle_monomial(&sys, &m, &phi, &p));
    }
    let other = arc(fixtures::g5p());
    assert_eq!(
        rep_apply(&sys, &elem(&other, "v"), &phi),
        Err(BranchingError::GraphMismatch)
    );
}

#[test]
fn monomials_match_pointwise_oracle() {
    for (name, g) in fixtures::named() {
        let g = arc(g);
        for (kind, build) in builders() {
            let sys = build(&g);
            let tests = test_functions(&sys, 1);
            let pts = sample_points(&sys, 20);
            for m in crate::cohn::normal_monomials(&g, 2) {
                for phi in tests.iter().take(6) {
                    let out = apply_monomial(&sys, &m, phi);
                    for p in &pts {
                        assert_eq!(out.eval(p), oracle_monomial(&sys, &m, phi, p), "{name}/{kind}");
                    }
                }
            }
        }
    }
}

#[test]
fn relations_hold_operator_wise() {
    for (name, g) in fixtures::named() {
        let g = arc(g);
        for (kind, build) in builders() {
            let sys = build(&g);
            let op = |s: &str, phi: &ModFunction| -> ModFunction {
                // apply generator by generator, right to left
                s.split('.')
                    .rev()
                    .fold(phi.clone(), |acc, gen| rep_apply(&sys, &elem(&g, gen), &acc).unwrap())
            };
            for phi in test_functions(&sys, 1) {
                for e in g.edges() {
                    let en = g.edge_name(e);
                    let s = g.vertex_name(g.src(e));
                    let r = g.vertex_name(g.rng(e));
                    assert_eq!(op(&format!("{en}^.{en}"), &phi), op(r, &phi), "{name}/{kind} CK1");
                    assert_eq!(op(&format!("{s}.{en}"), &phi), op(en, &phi), "{name}/{kind} E1");
                    assert_eq!(op(&format!("{en}^.{s}"), &phi), op(&format!("{en}^"), &phi), "{name}/{kind} E2");
                    for f in g.edges().filter(|&f| f != e) {
                        let fname = g.edge_name(f);
                        assert!(op(&format!("{en}^.{fname}"), &phi).is_zero(), "{name}/{kind} CK1 off-diagonal");
                    }
                }
                for v in g.x_vertices() {
                    let sum = g
                        .out_edges(v)
                        .iter()
                        .fold(ModFunction::zero(), |acc, &e| {
                            let en = g.edge_name(e);
                            acc.add(&op(&format!("{en}.{en}^"), &phi))
                        });
                    assert_eq!(sum, op(g.vertex_name(v), &phi), "{name}/{kind} XCK2");
                }
            }
        }
    }
}

#[test]
fn exit_free_cycles_map_their_base_onto_itself() {
    for (name, g) in fixtures::named() {
        let g = arc(g);
        for (kind, build) in builders() {
            let sys = build(&g);
            for c in constrained_cycles(&g) {
                let fc = sys.f_path(c.path().edges());
                assert_eq!(fc.domain(), *sys.d(c.base()), "{name}/{kind}");
                assert_eq!(fc.range(), *sys.d(c.base()), "{name}/{kind}");
            }
        }
    }
}

// --- faithfulness ----------------------------------------------------------

#[test]
fn faithfulness_examples() {
    let g = arc(fixtures::g5p());
    assert_eq!(
        faithfulness_conditions(&build_rotation_system(&g), 10),
        Faithfulness::Faithful { m_bound: 10 }
    );
    let id = build_identity_system(&g);
    assert!(check_axioms(&id).ok());
    match faithfulness_conditions(&id, 10) {
        Faithfulness::FixedPoints { power, fixed, base, .. } => {
            assert_eq!(power, 1);
            assert_eq!(fixed, "[0,1)");
            assert_eq!(base, "v");
        }
        other => panic!("{other}"),
    }

    let g = arc(fixtures::g2_cohn());
    let sys = build_standard_system(&g);
    assert!(faithfulness_conditions(&sys, 10).is_faithful());
    let (v, e) = (g.vertex_id("v").unwrap(), g.edge_id("e").unwrap());
    assert_eq!(sys.d(v).subtract(sys.r(e)), iv(q(1, 2), q(1, 1)));
    let cover = build_covering_system(&g);
    assert!(check_axioms(&cover).ok());
    assert_eq!(faithfulness_conditions(&cover, 10).condition(), Some(2));
}

#[test]
fn rank_check_examples() {
    let g = arc(fixtures::g5p());
    let rot = injectivity_rank_check(&build_rotation_system(&g), 3, 10);
    assert!(rot.full_rank() && rot.consistent(), "{rot}");
    let id = injectivity_rank_check(&build_identity_system(&g), 2, 10);
    assert!(!id.full_rank() && id.consistent(), "{id}");
    assert_eq!(id.kernel_witness, Some(elem(&g, "e - v")));

    let g = arc(fixtures::g1());
    let r = injectivity_rank_check(&build_standard_system(&g), 0, 10);
    assert_eq!((r.monomials, r.rank), (1, 1));

    let g = arc(fixtures::g2_cohn());
    let cover = injectivity_rank_check(&build_covering_system(&g), 1, 10);
    assert!(!cover.full_rank() && cover.consistent(), "{cover}");
    assert_eq!(cover.kernel_witness, Some(elem(&g, "e.e^ - v")));
}

#[test]
fn rank_check_agrees_with_conditions_on_all_fixtures() {
    for (name, g) in fixtures::named() {
        let g = arc(g);
        for (kind, build) in builders() {
            let check = injectivity_rank_check(&build(&g), 2, 10);
            assert!(check.consistent(), "{name}/{kind}: {check}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn rep_is_multiplicative(seed in any::<u64>(), which in 0usize..16) {
        let mut named = fixtures::named();
        let (_, g) = named.swap_remove(which % named.len());
        let g = arc(g);
        let (_, build) = builders()[which % 2];
        let sys = build(&g);
        let sampler = ElementSampler::new(&g, 2, 3);
        let mut rng = rng_with_seed(seed);
        let x = sampler.sample(&mut rng);
        let y = sampler.sample(&mut rng);
        for phi in test_functions(&sys, 0).iter().take(5) {
            let lhs = rep_apply(&sys, &x.mul(&y), phi).unwrap();
            let rhs = rep_apply(&sys, &x, &rep_apply(&sys, &y, phi).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
