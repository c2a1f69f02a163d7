use std::fmt::Write;

use super::{PrefixTable, SyntaxError};
use crate::rdf::vocab::{rdf, xsd};
use crate::rdf::{escape_string, Dataset, GraphName, Iri, Quad, Subject, Term};

/// Serializes a dataset as TriG.
///
/// Canonical mode writes every term in full N-Quads form, default graph
/// first and named graphs sorted by IRI, each sorted by subject, predicate
/// and object; it refuses blank nodes. The other mode compacts IRIs with
/// `prefixes` and groups predicates and objects per subject.
pub fn serialize_trig(dataset: &Dataset, prefixes: &PrefixTable, canonical: bool) -> Result<String, SyntaxError> {
    let mut quads: Vec<Quad> = dataset.iter().collect();
    if canonical {
        for q in &quads {
            if let Subject::BlankNode(b) = &q.subject {
                return Err(SyntaxError::BlankNodeInCanonical(b.label().to_string()));
            }
            if let Term::BlankNode(b) = &q.object {
                return Err(SyntaxError::BlankNodeInCanonical(b.label().to_string()));
            }
        }
    }
    quads.sort_by(|a, b| {
        (&a.graph, &a.subject, &a.predicate, &a.object).cmp(&(&b.graph, &b.subject, &b.predicate, &b.object))
    });

    let mut out = String::new();
    for (label, ns) in prefixes.iter() {
        writeln!(out, "@prefix {label}: <{}> .", ns.as_str()).unwrap();
    }
    if !prefixes.is_empty() && !quads.is_empty() {
        out.push('\n');
    }

    let mut start = 0;
    while start < quads.len() {
        let graph = quads[start].graph.clone();
        let end = start + quads[start..].iter().take_while(|q| q.graph == graph).count();
        let block = &quads[start..end];
        let indent = match &graph {
            GraphName::Default => "",
            GraphName::Named(g) => {
                let name = if canonical { full_iri(g) } else { iri_text(g, prefixes) };
                writeln!(out, "{name} {{").unwrap();
                "    "
            }
        };
        if canonical {
            for q in block {
                writeln!(
                    out,
                    "{indent}{} {} {} .",
                    subject_full(&q.subject),
                    full_iri(&q.predicate),
                    term_full(&q.object)
                )
                .unwrap();
            }
        } else {
            write_grouped(&mut out, block, prefixes, indent);
        }
        if graph != GraphName::Default {
            out.push_str("}\n");
        }
        start = end;
    }
    Ok(out)
}

fn write_grouped(out: &mut String, block: &[Quad], prefixes: &PrefixTable, indent: &str) {
    let mut i = 0;
    while i < block.len() {
        let subject = &block[i].subject;
        let end = i + block[i..].iter().take_while(|q| &q.subject == subject).count();
        write!(out, "{indent}{}", subject_compact(subject, prefixes)).unwrap();
        let mut j = i;
        let mut first_predicate = true;
        while j < end {
            let predicate = &block[j].predicate;
            let pend = j + block[j..end].iter().take_while(|q| &q.predicate == predicate).count();
            if !first_predicate {
                write!(out, " ;\n{indent}   ").unwrap();
            }
            first_predicate = false;
            let p = if predicate.as_str() == rdf::TYPE {
                "a".to_string()
            } else {
                iri_text(predicate, prefixes)
            };
            write!(out, " {p} ").unwrap();
            let objects: Vec<String> = block[j..pend]
                .iter()
                .map(|q| term_compact(&q.object, prefixes))
                .collect();
            out.push_str(&objects.join(", "));
            j = pend;
        }
        out.push_str(" .\n");
        i = end;
    }
}

fn full_iri(iri: &Iri) -> String {
    let mut s = String::with_capacity(iri.as_str().len() + 2);
    s.push('<');
    for c in iri.as_str().chars() {
        if (c as u32) < 0x20 {
            write!(s, "\\u{:04X}", c as u32).unwrap();
        } else {
            s.push(c);
        }
    }
    s.push('>');
    s
}

fn iri_text(iri: &Iri, prefixes: &PrefixTable) -> String {
    prefixes.compact(iri).unwrap_or_else(|| full_iri(iri))
}

fn subject_full(s: &Subject) -> String {
    match s {
        Subject::Iri(i) => full_iri(i),
        Subject::BlankNode(b) => b.to_string(),
    }
}

fn subject_compact(s: &Subject, prefixes: &PrefixTable) -> String {
    match s {
        Subject::Iri(i) => iri_text(i, prefixes),
        Subject::BlankNode(b) => b.to_string(),
    }
}

fn term_full(t: &Term) -> String {
    match t {
        Term::Iri(i) => full_iri(i),
        Term::BlankNode(b) => b.to_string(),
        Term::Literal(l) => {
            let mut s = format!("\"{}\"", escape_string(l.lexical()));
            if let Some(lang) = l.language() {
                write!(s, "@{lang}").unwrap();
            } else if l.datatype().as_str() != xsd::STRING {
                write!(s, "^^{}", full_iri(l.datatype())).unwrap();
            }
            s
        }
    }
}

fn term_compact(t: &Term, prefixes: &PrefixTable) -> String {
    match t {
        Term::Iri(i) => iri_text(i, prefixes),
        Term::Literal(l) if l.language().is_none() && l.datatype().as_str() != xsd::STRING => {
            format!(
                "\"{}\"^^{}",
                escape_string(l.lexical()),
                iri_text(l.datatype(), prefixes)
            )
        }
        other => term_full(other),
    }
}
