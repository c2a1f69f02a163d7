//! Builds a small dataset and looks quads up by any combination of bound
//! positions.

use kgsu_core::rdf::{Dataset, GraphName, IndexOrder, Iri, Literal, Quad, Term};

fn ex(local: &str) -> Iri {
    Iri::new(format!("http://example.com/base/{local}")).expect("absolute IRI")
}

fn main() {
    let mut d = Dataset::new();
    let unit = GraphName::Named(ex("semunit/creatorStatementUnit/Publication_1"));
    d.insert(Quad::new(
        ex("Publication_1"),
        ex("creator"),
        ex("Person_7"),
        unit.clone(),
    ));
    d.insert(Quad::new(
        ex("Publication_1"),
        ex("title"),
        Literal::lang("Soil carbon", "en").expect("tag"),
        GraphName::Default,
    ));
    d.insert(Quad::new(
        ex("Publication_2"),
        ex("creator"),
        ex("Person_7"),
        GraphName::Default,
    ));
    // Re-inserting is a no-op: the store has set semantics.
    assert!(!d.insert(Quad::new(
        ex("Publication_2"),
        ex("creator"),
        ex("Person_7"),
        GraphName::Default
    )));

    println!("{} quads in {} graphs", d.len(), d.graphs().len());
    let person = Term::Iri(ex("Person_7"));
    for q in d.quads_matching(None, Some(&ex("creator")), Some(&person), None) {
        println!("{} has creator {} in {:?}", q.subject, q.object, q.graph);
    }
    println!("graph {:?}:", unit);
    for q in d.quads_matching(None, None, None, Some(&unit)) {
        println!("  {} {} {}", q.subject, q.predicate, q.object);
    }
    for order in IndexOrder::ALL {
        println!("{order:?} index holds {} keys", d.iter_index(order).count());
    }
}
