#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use kgsu_core::rdf::Dataset;

pub const LINKS_UNIT: &str = "http://example.com/base/semunit/linksCompoundUnit/Dataset_20907";
pub const ID_UNIT: &str = "http://example.com/base/semunit/namedindividualidentificationunit/Publication_31149";
pub const PUBLICATION: &str = "http://example.com/base/Publication_31149";

/// A second label on the identification unit that breaks its label pattern.
pub const BAD_LABEL: &str = "<http://example.com/base/semunit/namedindividualidentificationunit/Publication_31149> {
  <http://example.com/base/semunit/namedindividualidentificationunit/Publication_31149>
    <http://www.w3.org/2000/01/rdf-schema#label> \"not a publication label\" .
}
";

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures")
}

pub fn fixture_text(rel: &str) -> String {
    std::fs::read_to_string(fixtures().join(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

/// Every CSV in the fixture tables directory, keyed by table name.
pub fn fixture_tables() -> BTreeMap<String, String> {
    let mut out = BTreeMap::new();
    for entry in std::fs::read_dir(fixtures().join("tables")).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_stem().unwrap().to_string_lossy().into_owned();
        out.insert(name, std::fs::read_to_string(&path).unwrap());
    }
    out
}

pub fn fixture_dataset() -> Dataset {
    kgsu::ops::map_dataset(&fixture_text("mapping.ttl"), &fixture_tables()).expect("fixture maps")
}

/// Percent-encodes everything outside the unreserved set, for one path segment.
pub fn encode(s: &str) -> String {
    s.bytes()
        .map(|b| match b {
            b'A'..=b'Z' | b'a'..=b'z' | b'0'..=b'9' | b'-' | b'.' | b'_' | b'~' => (b as char).to_string(),
            _ => format!("%{b:02X}"),
        })
        .collect()
}
