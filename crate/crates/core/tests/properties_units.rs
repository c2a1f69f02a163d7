//! Semantic-unit properties on random unit batches: graph placement,
//! read-back, and agreement between the query templates and the API.

mod common;

use std::collections::{BTreeSet, VecDeque};

use common::{query_text, select};
use kgsu_core::rdf::vocab::rdf;
use kgsu_core::rdf::{Dataset, GraphName, Iri, Quad, Term, Triple};
use kgsu_core::units::{
    associations, extract, materialize, mint_unit_iri, read_unit, units_for_subject, vocab, SemanticUnit, UnitKind,
};
use proptest::prelude::*;

const NS: &str = "http://example.com/base/";

fn resource(i: u8) -> Iri {
    Iri::new(format!("{NS}Resource_{i}")).unwrap()
}

fn unit_iri(i: usize) -> Iri {
    mint_unit_iri("testUnit", &format!("u{i}")).unwrap()
}

/// Per unit: compound flag, subject index, data triples, association targets.
#[derive(Debug, Clone)]
struct Plan {
    compound: bool,
    subject: u8,
    triples: Vec<(u8, u8, u8)>,
    members: Vec<usize>,
}

fn arb_batch() -> impl Strategy<Value = Vec<Plan>> {
    (1usize..10).prop_flat_map(|n| {
        let plan = (
            any::<bool>(),
            0u8..4,
            prop::collection::vec((0u8..4, 0u8..3, 0u8..6), 0..4),
            prop::collection::vec(0..n, 0..4),
        )
            .prop_map(|(compound, subject, triples, members)| Plan {
                compound,
                subject,
                triples,
                members,
            });
        prop::collection::vec(plan, n)
    })
}

fn build(i: usize, s: &Plan) -> SemanticUnit {
    let class = Iri::new(format!("{NS}semanticunits/testClass{}", u8::from(s.compound))).unwrap();
    let kind = if s.compound {
        UnitKind::Compound(class)
    } else {
        UnitKind::Statement(class)
    };
    let mut u = SemanticUnit::new(kind, unit_iri(i), resource(s.subject));
    for &(sub, p, o) in &s.triples {
        u = u.with_triple(Triple::new(
            resource(sub),
            Iri::new(format!("{NS}p{p}")).unwrap(),
            Iri::new(format!("{NS}o{o}")).unwrap(),
        ));
    }
    if s.compound {
        for &m in &s.members {
            u = u.with_association(unit_iri(m));
        }
    }
    u
}

fn materialize_all(units: &[SemanticUnit]) -> Dataset {
    let mut d = Dataset::new();
    for u in units {
        materialize(u, &mut d).unwrap();
    }
    d
}

/// Compounds reaching a unit of `subject`, computed from the plans alone.
fn parents_oracle(plans: &[Plan], subject: u8) -> BTreeSet<Iri> {
    let mut reached: BTreeSet<usize> = BTreeSet::new();
    let mut queue: VecDeque<usize> = (0..plans.len()).filter(|&i| plans[i].subject == subject).collect();
    while let Some(m) = queue.pop_front() {
        for (c, s) in plans.iter().enumerate() {
            if s.compound && s.members.contains(&m) && reached.insert(c) {
                queue.push_back(c);
            }
        }
    }
    reached.into_iter().map(unit_iri).collect()
}

fn iri_column(d: &Dataset, text: &str, var: &str) -> Vec<Iri> {
    select(d, text)
        .column(var)
        .into_iter()
        .filter_map(|t| t.as_iri().cloned())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 200,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn materialized_units_are_well_formed(plans in arb_batch()) {
        let units: Vec<SemanticUnit> = plans.iter().enumerate().map(|(i, s)| build(i, s)).collect();
        let d = materialize_all(&units);
        let graph_names = d.graphs();
        let prop_subject = Iri::new(vocab::PROP_SUBJECT).unwrap();
        let rdf_type = Iri::new(rdf::TYPE).unwrap();
        for u in &units {
            let mut alone = Dataset::new();
            materialize(u, &mut alone).unwrap();
            prop_assert_eq!(alone.graphs(), BTreeSet::from([GraphName::Named(u.iri.clone())]));

            let g = GraphName::Named(u.iri.clone());
            let me = Term::Iri(u.iri.clone());
            prop_assert_eq!(d.quads_matching(None, Some(&prop_subject), None, Some(&g)).count(), 1);
            prop_assert!(d.quads_matching(Some(&me), Some(&rdf_type), None, Some(&g)).count() >= 1);
            for m in associations(&d, &u.iri) {
                prop_assert!(graph_names.contains(&GraphName::Named(m)));
            }
        }
    }

    #[test]
    fn read_unit_recovers_materialized_unit(plans in arb_batch()) {
        let units: Vec<SemanticUnit> = plans.iter().enumerate().map(|(i, s)| build(i, s)).collect();
        let d = materialize_all(&units);
        for u in &units {
            let back = read_unit(&d, &u.iri).expect("unit graph present");
            prop_assert_eq!(&back.subject, &u.subject);
            prop_assert_eq!(back.kinds.iter().collect::<BTreeSet<_>>(), u.kinds.iter().collect::<BTreeSet<_>>());
            prop_assert_eq!(
                back.data_triples.iter().collect::<BTreeSet<_>>(),
                u.data_triples.iter().collect::<BTreeSet<_>>()
            );
            prop_assert_eq!(
                back.associations.iter().collect::<BTreeSet<_>>(),
                u.associations.iter().collect::<BTreeSet<_>>()
            );
        }
    }

    #[test]
    fn query_templates_agree_with_api(plans in arb_batch()) {
        let units: Vec<SemanticUnit> = plans.iter().enumerate().map(|(i, s)| build(i, s)).collect();
        let d = materialize_all(&units);

        let p1 = query_text("pattern1");
        let p1_fixed = "<http://example.com/base/semunit/locationStatementUnit/grassland_Plot_31499>";
        let p2 = query_text("pattern2");
        let p2_fixed = "<http://example.com/base/semunit/linksCompoundUnit/Dataset_20907>";
        let cq4 = query_text("cq4_units");
        let cq4_fixed = "<http://example.com/base/Publication_31149>";
        prop_assert!(p2.contains("SELECT ?Links"));
        for fixed in [(p1.as_str(), p1_fixed), (p2.as_str(), p2_fixed), (cq4.as_str(), cq4_fixed)] {
            prop_assert!(fixed.0.contains(fixed.1));
        }

        for u in &units {
            let target = format!("<{}>", u.iri.as_str());
            let s = select(&d, &p1.replace(p1_fixed, &target));
            let got: BTreeSet<Quad> = (0..s.len())
                .map(|r| {
                    Quad::new(
                        s.get(r, "s").unwrap().as_iri().unwrap().clone(),
                        s.get(r, "p").unwrap().as_iri().unwrap().clone(),
                        s.get(r, "o").unwrap().clone(),
                        GraphName::Named(u.iri.clone()),
                    )
                })
                .collect();
            prop_assert_eq!(s.len(), got.len());
            prop_assert_eq!(got, extract(&d, &u.iri).into_iter().collect::<BTreeSet<_>>());

            // The template projects only ?Links, which its pattern never binds.
            let expected = associations(&d, &u.iri);
            let p2_here = p2.replace(p2_fixed, &target);
            prop_assert_eq!(select(&d, &p2_here).len(), expected.len());
            let widened = p2_here.replace("SELECT ?Links", "SELECT ?Links ?o");
            let members: BTreeSet<Iri> = iri_column(&d, &widened, "o").into_iter().collect();
            prop_assert_eq!(members, expected.into_iter().collect::<BTreeSet<_>>());
        }

        for r in 0u8..4 {
            let su = units_for_subject(&d, &resource(r));
            let text = cq4.replace(cq4_fixed, &format!("<{}>", resource(r).as_str()));
            let direct: BTreeSet<Iri> = iri_column(&d, &text, "semUnits").into_iter().collect();
            prop_assert_eq!(&direct, &su.direct.iter().cloned().collect::<BTreeSet<_>>());
            let expected_direct: BTreeSet<Iri> =
                (0..plans.len()).filter(|&i| plans[i].subject == r).map(unit_iri).collect();
            prop_assert_eq!(direct, expected_direct);
            prop_assert_eq!(su.parents.into_iter().collect::<BTreeSet<_>>(), parents_oracle(&plans, r));
        }
    }
}
