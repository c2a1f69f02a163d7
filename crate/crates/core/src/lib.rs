pub mod enrichment;
pub mod mapping;
pub mod rdf;
pub mod shacl;
pub mod sparql;
pub mod syntax;
pub mod synth;
pub mod units;
