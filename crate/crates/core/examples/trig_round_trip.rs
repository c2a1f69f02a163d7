//! Parses TriG, prints it in canonical form and parses the output again.

use kgsu_core::syntax::{parse_trig, serialize_trig};

const INPUT: &str = r#"
@prefix ex: <http://example.com/base/> .
@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .

ex:Publication_1 a ex:Publication ; rdfs:label "Publication 1"@en .

ex:unit1 {
  ex:unit1 ex:semanticUnitSubject ex:Publication_1 .
  ex:Publication_1 ex:title "A \"quoted\" title\nover two lines" .
}
"#;

fn main() {
    let (d, prefixes) = parse_trig(INPUT).expect("valid TriG");
    let text = serialize_trig(&d, &prefixes, true).expect("no blank nodes");
    print!("{text}");
    let (back, _) = parse_trig(&text).expect("canonical output parses");
    assert_eq!(back.iter().collect::<Vec<_>>(), d.iter().collect::<Vec<_>>());
    assert_eq!(serialize_trig(&back, &prefixes, true).expect("still ground"), text);
    println!("# round trip preserved {} quads", d.len());
}
