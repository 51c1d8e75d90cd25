use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::fixtures;
use crate::sampling::{rng_with_seed, ElementSampler};
use crate::scalar::{rat, ratio};

fn arc(g: Graph) -> Arc<Graph> {
    Arc::new(g)
}

fn parse(g: &Arc<Graph>, s: &str) -> Element {
    parse_element(g, s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

#[test]
fn generators_are_normal_monomials() {
    let g = arc(fixtures::g2());
    let v = g.vertex_id("v").unwrap();
    let w = g.vertex_id("w").unwrap();
    let e = g.edge_id("e").unwrap();
    let gen = |k, id| Element::<Rational>::generator(&g, k, id).unwrap();
    let ve = gen(GeneratorKind::Vertex, "v");
    assert_eq!(ve.terms().count(), 1);
    assert_eq!(ve.coefficient(&Monomial::vertex(v)), rat(1));
    let ee = gen(GeneratorKind::Edge, "e");
    let m = Monomial::new(&g, Path::edge(&g, e), Path::vertex(w)).unwrap();
    assert_eq!(ee.coefficient(&m), rat(1));
    assert_eq!(ee.len(), 1);
    let gh = gen(GeneratorKind::GhostEdge, "e");
    assert_eq!(gh.coefficient(&m.star()), rat(1));
    assert_eq!(
        Element::<Rational>::generator(&g, GeneratorKind::Edge, "nope"),
        Err(AlgebraError::UnknownId("nope".into()))
    );
}

#[test]
fn linear_structure() {
    let g = arc(fixtures::g2());
    let x = parse(&g, "v + 2 * e");
    assert_eq!(x.add(&Element::zero(&g)), x);
    assert!(parse(&g, "v - v").is_zero());
    assert_eq!(parse(&g, "2*e + 3*e"), parse(&g, "5 * e"));
    let other = arc(fixtures::g2_cohn());
    assert_eq!(
        x.try_add(&Element::vertex(&other, other.vertex_id("v").unwrap())),
        Err(AlgebraError::GraphMismatch)
    );
    assert_eq!(x.try_mul(&Element::zero(&other)), Err(AlgebraError::GraphMismatch));
}

#[test]
fn multiplication_examples() {
    let g5 = arc(fixtures::g5p());
    assert_eq!(parse(&g5, "e^ . e"), parse(&g5, "v"));
    assert_eq!(parse(&g5, "e . e^"), parse(&g5, "v"));

    let g6 = arc(fixtures::g6());
    let lhs = parse(&g6, "g2 . g2^");
    assert_eq!(lhs.to_string(), "v - g1.g1^");

    let g5pp = arc(fixtures::g5pp());
    let ee = parse(&g5pp, "e . e^");
    assert_eq!(ee.to_string(), "e.e^");
    assert_eq!(ee.len(), 1);
}

/// Checks the defining relations generator-by-generator.
fn check_relations(g: &Arc<Graph>) {
    let vs: Vec<_> = g.vertices().collect();
    let es: Vec<_> = g.edges().collect();
    let vertex = |v| Element::<Rational>::vertex(g, v);
    for &v in &vs {
        for &w in &vs {
            let expect = if v == w { vertex(v) } else { Element::zero(g) };
            assert_eq!(vertex(v).mul(&vertex(w)), expect);
        }
    }
    for &e in &es {
        let ed = Element::<Rational>::edge(g, e);
        let gh = Element::<Rational>::ghost(g, e);
        let s = vertex(g.src(e));
        let r = vertex(g.rng(e));
        assert_eq!(s.mul(&ed), ed);
        assert_eq!(ed.mul(&r), ed);
        assert_eq!(r.mul(&gh), gh);
        assert_eq!(gh.mul(&s), gh);
        for &f in &es {
            let prod = gh.mul(&Element::edge(g, f));
            let expect = if e == f { r.clone() } else { Element::zero(g) };
            assert_eq!(prod, expect);
        }
    }
    for v in g.x_vertices() {
        assert_eq!(Element::<Rational>::edge_sum(g, v), vertex(v));
    }
    for v in g.y_vertices() {
        assert!(!Element::<Rational>::gap(g, v).is_zero());
    }
}

#[test]
fn relations_hold_on_fixtures() {
    for (name, g) in fixtures::named() {
        eprintln!("{name}");
        check_relations(&arc(g));
    }
}

/// Independent count: for an acyclic graph, the Leavitt path algebra of
/// `E(X)` is a direct sum of matrix algebras, one per sink `s`, of size
/// the number of paths ending at `s`.
fn matrix_sum_dimension(g: &Arc<Graph>) -> usize {
    let ext = g.extended_graph();
    let h = ext.graph();
    fn paths_into(h: &Graph, target: VertexId) -> usize {
        // Paths ending at `target`: walk edges backwards.
        let mut count = 1;
        for e in h.edges() {
            if h.rng(e) == target {
                count += paths_into(h, h.src(e));
            }
        }
        count
    }
    h.vertices()
        .filter(|&v| h.is_sink(v))
        .map(|s| paths_into(h, s).pow(2))
        .sum()
}

#[test]
fn dimensions() {
    assert_eq!(dimension_if_finite(&fixtures::g2_cohn(), 16), Dimension::Finite(5));
    assert_eq!(dimension_if_finite(&fixtures::g2(), 16), Dimension::Finite(4));
    assert_eq!(dimension_if_finite(&fixtures::g1(), 16), Dimension::Finite(1));
    assert_eq!(dimension_if_finite(&fixtures::g3(), 16), Dimension::Unbounded);
    for g in [fixtures::g1(), fixtures::g2(), fixtures::g2_cohn()] {
        let g = arc(g);
        assert_eq!(
            dimension_if_finite(&g, 16),
            Dimension::Finite(matrix_sum_dimension(&g))
        );
    }
    let listed: Vec<String> = normal_monomials(&fixtures::g2_cohn(), 4)
        .iter()
        .map(|m| m.display(&fixtures::g2_cohn()).to_string())
        .collect();
    assert_eq!(listed, ["v", "w", "e^", "e", "e.e^"]);
}

#[test]
fn star_examples() {
    let g2 = arc(fixtures::g2());
    assert_eq!(parse(&g2, "e").star(), parse(&g2, "e^"));
    let g3 = arc(fixtures::g3());
    assert_eq!(parse(&g3, "2 * e1.e2").star(), parse(&g3, "2 * e2^.e1^"));
    assert_eq!(parse(&g3, "2 * e1.e2").star().to_string(), "2 * e2^.e1^");
}

#[test]
fn grading_examples() {
    let g = arc(fixtures::g2());
    let x = parse(&g, "v + e");
    assert_eq!(x.graded_component(0), parse(&g, "v"));
    assert_eq!(x.graded_component(1), parse(&g, "e"));
    assert_eq!(parse(&g, "e^").graded_component(-1), parse(&g, "e^"));
    assert_eq!(x.degrees(), vec![0, 1]);
    assert_eq!(x.homogeneous_degree(), None);
}

#[test]
fn corner_of_two_cycle() {
    let g = arc(fixtures::g3());
    let w = g.vertex_id("w").unwrap();
    let corner = CornerDescriptor::at(&g, w).unwrap();
    assert_eq!(corner.markers(), &[1, 2]);
    let list: Vec<Element> = corner_spanning_monomials(&g, &corner, 1, 1).unwrap();
    let printed: Vec<String> = list.iter().map(|x| x.to_string()).collect();
    for expect in ["w", "e1.e2", "e2^.e1^", "e1.e2.e2^.e1^", "e1.e1^", "e1.e2.e1.e1^.e2^.e1^"] {
        assert!(printed.iter().any(|p| p == expect), "missing {expect} in {printed:?}");
    }
    for x in &list {
        let wx = Element::vertex(&g, w);
        assert_eq!(wx.mul(x).mul(&wx), *x);
    }
}

#[test]
fn corner_of_loop_is_laurent() {
    let g = arc(fixtures::g5p());
    let v = g.vertex_id("v").unwrap();
    let corner = CornerDescriptor::at(&g, v).unwrap();
    assert!(corner.markers().is_empty());
    let list: Vec<Element> = corner_spanning_monomials(&g, &corner, 2, 2).unwrap();
    assert_eq!(list.len(), 9);
    for (idx, x) in list.iter().enumerate() {
        let (i, j) = (idx / 3, idx % 3);
        let expect = match i.cmp(&j) {
            std::cmp::Ordering::Equal => parse(&g, "v"),
            std::cmp::Ordering::Greater => parse(&g, &vec!["e"; i - j].join(".")),
            std::cmp::Ordering::Less => parse(&g, &vec!["e^"; j - i].join(".")),
        };
        assert_eq!(*x, expect, "i={i} j={j}");
    }
    let g6 = arc(fixtures::g6());
    assert!(CornerDescriptor::at(&g6, g6.vertex_id("v").unwrap()).is_err());
}

#[test]
fn corner_with_no_powers() {
    let g = arc(fixtures::g3());
    let w = g.vertex_id("w").unwrap();
    let corner = CornerDescriptor::at(&g, w).unwrap();
    let list: Vec<Element> = corner_spanning_monomials(&g, &corner, 0, 0).unwrap();
    let printed: Vec<String> = list.iter().map(|x| x.to_string()).collect();
    assert_eq!(printed, ["w", "e1.e1^", "e1.e2.e2^.e1^"]);
}

#[test]
fn local_units() {
    for g in fixtures::all() {
        let g = arc(g);
        let sampler = ElementSampler::new(&g, 3, 4);
        let mut rng = rng_with_seed(7);
        for _ in 0..20 {
            let x = sampler.sample(&mut rng);
            let mut support = std::collections::BTreeSet::new();
            for (m, _) in x.terms() {
                support.insert(m.left_vertex());
                support.insert(m.right_vertex());
            }
            let mut u = Element::zero(&g);
            for v in support {
                u = u.add(&Element::vertex(&g, v));
            }
            assert_eq!(u.mul(&x), x);
            assert_eq!(x.mul(&u), x);
        }
    }
}

#[test]
fn dsl_errors() {
    let g = arc(fixtures::g3());
    assert_eq!(
        parse_element(&g, "e1 + zz"),
        Err(ParseError::UnknownId {
            column: 6,
            id: "zz".into()
        })
    );
    assert!(matches!(parse_element(&g, "e1 + "), Err(ParseError::Syntax { column: 6, .. })));
    assert!(matches!(parse_element(&g, "e1 $"), Err(ParseError::Syntax { column: 4, .. })));
    assert!(matches!(parse_element(&g, "1/0 * w"), Err(ParseError::Syntax { .. })));
    assert!(parse(&g, "0").is_zero());
    assert_eq!(parse(&g, "1"), Element::unit(&g));
}

#[test]
fn dsl_examples() {
    let g = arc(fixtures::g5pp());
    let gap = parse(&g, "v - e.e^");
    assert_eq!(gap, Element::gap(&g, g.vertex_id("v").unwrap()));
    let g3 = arc(fixtures::g3());
    let x = parse(&g3, "3/2 * e1.e2");
    let w = g3.vertex_id("w").unwrap();
    let path = Path::from_edges(&g3, vec![g3.edge_id("e1").unwrap(), g3.edge_id("e2").unwrap()]).unwrap();
    let m = Monomial::new(&g3, path, Path::vertex(w)).unwrap();
    assert_eq!(x.coefficient(&m), ratio(3, 2));
    assert_eq!(parse(&g3, "(e1 . e2)^"), parse(&g3, "e2^ . (e1)^"));
}

fn fixture_strategy() -> impl Strategy<Value = (&'static str, u64)> {
    (
        prop::sample::select(vec!["G2", "G2_cohn", "G3", "G4", "G5p", "G5pp", "G6"]),
        any::<u64>(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn print_parse_roundtrip((name, seed) in fixture_strategy()) {
        let g = arc(fixtures::by_name(name).unwrap());
        let sampler = ElementSampler::new(&g, 3, 5);
        let x = sampler.sample(&mut rng_with_seed(seed));
        prop_assert_eq!(parse_element(&g, &x.to_string()).unwrap(), x);
    }

    #[test]
    fn associativity_and_involution((name, seed) in fixture_strategy()) {
        let g = arc(fixtures::by_name(name).unwrap());
        let sampler = ElementSampler::new(&g, 3, 3);
        let mut rng = rng_with_seed(seed);
        let (x, y, z) = (sampler.sample(&mut rng), sampler.sample(&mut rng), sampler.sample(&mut rng));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y).star(), y.star().mul(&x.star()));
        prop_assert_eq!(x.star().star(), x.clone());
        let xy = x.mul(&y);
        for n in -6..=6 {
            let mut expect = Element::zero(&g);
            for p in -3..=3 {
                expect = expect.add(&x.graded_component(p).mul(&y.graded_component(n - p)));
            }
            prop_assert_eq!(xy.graded_component(n), expect);
        }
        let mut total = Element::zero(&g);
        for d in x.degrees() {
            total = total.add(&x.graded_component(d));
        }
        prop_assert_eq!(total, x);
    }

    #[test]
    fn all_terms_normal((name, seed) in fixture_strategy()) {
        let g = arc(fixtures::by_name(name).unwrap());
        let sampler = ElementSampler::new(&g, 2, 3);
        let mut rng = rng_with_seed(seed);
        let xy = sampler.sample(&mut rng).mul(&sampler.sample(&mut rng));
        for (m, _) in xy.terms() {
            prop_assert!(m.is_normal(&g));
        }
    }
}
