//! Deterministic synthetic knowledge graphs shaped like the mapped
//! publication data: identification units, author compounds and link
//! statement units, in proportions that keep most graphs small.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::rdf::vocab::{rdf, rdfs};
use crate::rdf::{Dataset, GraphName, Iri, Literal, Quad, Subject, Term};
use crate::units::vocab;

/// Full size of the knowledge graph this generator is scaled against.
pub const FULL_SCALE_QUADS: usize = 763_987;

const B: &str = "http://example.com/base/";
const IAO_PUBLICATION: &str = "http://purl.obolibrary.org/obo/iao.owlpublication";

fn iri(s: String) -> Iri {
    Iri::new_unchecked(s)
}

struct Emitter<'a> {
    out: &'a mut Dataset,
    target: usize,
}

impl Emitter<'_> {
    fn full(&self) -> bool {
        self.out.len() >= self.target
    }

    fn quad(&mut self, s: &Iri, p: &str, o: Term, g: &GraphName) {
        if !self.full() {
            self.out
                .insert(Quad::new(Subject::Iri(s.clone()), Iri::new_unchecked(p), o, g.clone()));
        }
    }

    fn unit_header(&mut self, unit: &Iri, classes: &[&str], subject: &Iri) {
        let g = GraphName::Named(unit.clone());
        for c in classes {
            self.quad(unit, rdf::TYPE, Term::Iri(Iri::new_unchecked(*c)), &g);
        }
        self.quad(unit, vocab::PROP_SUBJECT, Term::Iri(subject.clone()), &g);
    }
}

/// Unit IRI of publication `i`'s identification unit, a convenient probe
/// for graph lookups on generated data.
pub fn identification_unit(i: usize) -> Iri {
    iri(format!("{B}semunit/namedindividualidentificationunit/Publication_{i}"))
}

/// Generates exactly `target` distinct quads; equal seeds give equal output.
pub fn generate(target: usize, seed: u64) -> Dataset {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Dataset::new();
    let mut e = Emitter { out: &mut out, target };
    let ex = |local: &str| format!("{B}{local}");
    let nii = ex("semanticunits/namedindividualidentificationunit");
    let su = vocab::STATEMENT_UNIT.to_string();
    let cu = vocab::COMPOUND_UNIT.to_string();
    let mut i = 0usize;
    while !e.full() {
        let publication = iri(ex(&format!("Publication_{i}")));

        let unit = identification_unit(i);
        let ug = GraphName::Named(unit.clone());
        e.unit_header(&unit, &[&nii], &publication);
        e.quad(
            &publication,
            rdf::TYPE,
            Term::Iri(Iri::new_unchecked(IAO_PUBLICATION)),
            &ug,
        );
        e.quad(
            &publication,
            rdfs::LABEL,
            Term::Literal(Literal::lang(format!("Publication {i}"), "en").expect("valid tag")),
            &ug,
        );
        e.quad(
            &unit,
            rdfs::LABEL,
            Term::Literal(Literal::simple(format!("Publication {i} a fabio:JournalArticle"))),
            &ug,
        );
        e.quad(
            &publication,
            rdf::TYPE,
            Term::Iri(Iri::new_unchecked(IAO_PUBLICATION)),
            &GraphName::Default,
        );

        let compound = iri(ex(&format!("semunit/authorsAndRolesCompoundUnit/Publication_{i}")));
        let cg = GraphName::Named(compound.clone());
        e.unit_header(
            &compound,
            &[&cu, &ex("semanticunits/authorsAndRolesCompoundUnit")],
            &publication,
        );
        for a in 0..rng.gen_range(1..=4) {
            let person = iri(ex(&format!("Person_{}", rng.gen_range(0..50_000))));
            let creator = iri(ex(&format!("semunit/creatorStatementUnit/Publication_{i}_{a}")));
            e.unit_header(
                &creator,
                &[&su, &ex("semanticunits/creatorStatementUnit")],
                &publication,
            );
            let sg = GraphName::Named(creator.clone());
            let creator_pred = "http://purl.org/dc/terms/creator";
            e.quad(&publication, creator_pred, Term::Iri(person.clone()), &sg);
            e.quad(&publication, creator_pred, Term::Iri(person), &cg);
            e.quad(&publication, vocab::PROP_ASSOC, Term::Iri(creator), &cg);
        }

        let links = iri(ex(&format!("semunit/linksCompoundUnit/Publication_{i}")));
        let lg = GraphName::Named(links.clone());
        e.unit_header(&links, &[&cu, &ex("semanticunits/linksCompoundUnit")], &publication);
        for _ in 0..rng.gen_range(0..=3) {
            let d = rng.gen_range(0..20_000);
            let dataset = iri(ex(&format!("Dataset_{d}")));
            let link = iri(ex(&format!(
                "semunit/linkStatementUnit/Publication_{i}_isSupplementTo_Dataset_{d}"
            )));
            let sg = GraphName::Named(link.clone());
            e.unit_header(&link, &[&su, &ex("semanticunits/linkStatementUnit")], &publication);
            for p in ["linksTo", "isSupplementTo"] {
                e.quad(&publication, &ex(p), Term::Iri(dataset.clone()), &sg);
                e.quad(&publication, &ex(p), Term::Iri(dataset.clone()), &lg);
            }
            e.quad(&publication, vocab::PROP_ASSOC, Term::Iri(link), &lg);
        }
        i += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_size_and_determinism() {
        for n in [0, 1, 17, 2_000] {
            assert_eq!(generate(n, 7).len(), n);
        }
        assert_eq!(
            generate(500, 3).iter().collect::<Vec<_>>(),
            generate(500, 3).iter().collect::<Vec<_>>()
        );
    }

    #[test]
    fn identification_units_are_populated() {
        let d = generate(5_000, 1);
        let g = GraphName::Named(identification_unit(3));
        assert_eq!(d.quads_matching(None, None, None, Some(&g)).count(), 5);
    }
}
