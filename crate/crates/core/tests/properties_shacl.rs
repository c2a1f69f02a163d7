//! Validation properties on random data: reports match a direct count of
//! values per focus node, and removing an offending quad removes exactly
//! its violation.

mod common;

use std::collections::BTreeSet;

use common::fixture_text;
use kgsu_core::rdf::vocab::rdf;
use kgsu_core::rdf::{Dataset, GraphName, Iri, Literal, Quad, Term};
use kgsu_core::shacl::{parse_shapes, validate, ConstraintKind, Violation};
use proptest::prelude::*;

const NS: &str = "http://example.com/base/";

const COUNTED: &str = r#"
@prefix sh: <http://www.w3.org/ns/shacl#> .
@prefix ex: <http://example.com/base/> .
ex:ThingShape a sh:NodeShape ;
  sh:targetClass ex:Thing ;
  sh:property [ sh:path ex:name ; sh:minCount 1 ; sh:maxCount 1 ; sh:pattern "^\\d+$" ] .
"#;

const PATTERN_ONLY: &str = r#"
@prefix sh: <http://www.w3.org/ns/shacl#> .
@prefix ex: <http://example.com/base/> .
ex:ThingShape a sh:NodeShape ;
  sh:targetClass ex:Thing ;
  sh:property [ sh:path ex:name ; sh:pattern "^\\d+$" ] .
"#;

const NAMES: [&str; 5] = ["12", "7", "x1", "a b", "305"];

fn ex(local: &str) -> Iri {
    Iri::new(format!("{NS}{local}")).unwrap()
}

fn node(i: u8) -> Iri {
    ex(&format!("n{i}"))
}

/// Typed nodes and (node, name index) pairs, all in the default graph.
fn arb_data() -> impl Strategy<Value = (BTreeSet<u8>, BTreeSet<(u8, usize)>)> {
    (
        prop::collection::btree_set(0u8..6, 0..6),
        prop::collection::btree_set((0u8..8, 0..NAMES.len()), 0..14),
    )
}

fn build(things: &BTreeSet<u8>, names: &BTreeSet<(u8, usize)>) -> Dataset {
    let mut d = Dataset::new();
    for &t in things {
        d.insert(Quad::new(
            node(t),
            Iri::new(rdf::TYPE).unwrap(),
            ex("Thing"),
            GraphName::Default,
        ));
    }
    for &(n, v) in names {
        d.insert(name_quad(n, v));
    }
    d
}

fn name_quad(n: u8, v: usize) -> Quad {
    Quad::new(node(n), ex("name"), Literal::simple(NAMES[v]), GraphName::Default)
}

fn all_digits(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_digit())
}

type Key = (Term, ConstraintKind, Option<Term>);

fn keys(vs: &[Violation]) -> Vec<Key> {
    let mut out: Vec<Key> = vs
        .iter()
        .map(|v| {
            let value = if v.kind == ConstraintKind::Pattern {
                v.value.clone()
            } else {
                None
            };
            (v.focus.clone(), v.kind, value)
        })
        .collect();
    out.sort();
    out
}

fn oracle(things: &BTreeSet<u8>, names: &BTreeSet<(u8, usize)>, counts: bool) -> Vec<Key> {
    let mut out = Vec::new();
    for &t in things {
        let values: Vec<&str> = names.iter().filter(|(n, _)| *n == t).map(|(_, v)| NAMES[*v]).collect();
        let focus = Term::Iri(node(t));
        if counts && values.is_empty() {
            out.push((focus.clone(), ConstraintKind::MinCount, None));
        }
        if counts && values.len() > 1 {
            out.push((focus.clone(), ConstraintKind::MaxCount, None));
        }
        for v in values.into_iter().filter(|v| !all_digits(v)) {
            out.push((
                focus.clone(),
                ConstraintKind::Pattern,
                Some(Term::Literal(Literal::simple(v))),
            ));
        }
    }
    out.sort();
    out
}

#[test]
fn empty_dataset_conforms() {
    for text in [
        COUNTED.to_string(),
        PATTERN_ONLY.to_string(),
        fixture_text("shapes.ttl"),
    ] {
        let report = validate(&Dataset::new(), &parse_shapes(&text).unwrap());
        assert!(report.conforms);
        assert!(report.violations.is_empty());
    }
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 200,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn report_matches_value_counts((things, names) in arb_data()) {
        let d = build(&things, &names);
        for (text, counts) in [(COUNTED, true), (PATTERN_ONLY, false)] {
            let report = validate(&d, &parse_shapes(text).unwrap());
            let expected = oracle(&things, &names, counts);
            prop_assert_eq!(report.conforms, expected.is_empty());
            prop_assert_eq!(keys(&report.violations), expected);
        }
    }

    #[test]
    fn removing_an_offending_quad_removes_its_violation((things, names) in arb_data(), pick in any::<prop::sample::Index>()) {
        let shapes = parse_shapes(PATTERN_ONLY).unwrap();
        let mut d = build(&things, &names);
        let before = validate(&d, &shapes).violations;
        if before.is_empty() {
            return Ok(());
        }
        let target = pick.get(&before).clone();
        let Term::Iri(focus) = &target.focus else { panic!("focus nodes are IRIs") };
        let value = target.value.clone().expect("pattern violations carry their value");
        prop_assert!(d.remove(&Quad::new(focus.clone(), ex("name"), value, GraphName::Default)));
        let after = validate(&d, &shapes).violations;
        let mut expected = before.clone();
        expected.retain(|v| *v != target);
        prop_assert_eq!(after, expected);
    }
}
