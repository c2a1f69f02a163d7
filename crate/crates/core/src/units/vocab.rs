//! IRIs of the semantic-unit vocabulary.

pub const BASE_NS: &str = "http://example.com/base/";
/// Namespace of unit classes and of the association property.
pub const SEMUNIT_NS: &str = "http://example.com/base/semanticunits/";
/// Prefix of minted unit IRIs: `{UNIT_IRI_NS}{kind segment}/{subject local}`.
pub const UNIT_IRI_NS: &str = "http://example.com/base/semunit/";

pub const PROP_SUBJECT: &str = "http://example.com/base/semanticUnitSubject";
pub const PROP_ASSOC: &str = "http://example.com/base/semanticunits/hasAssociatedSemanticUnit";

pub const NAMED_INDIVIDUAL_IDENTIFICATION_UNIT: &str =
    "http://example.com/base/semanticunits/namedindividualidentificationunit";
pub const STATEMENT_UNIT: &str = "http://example.com/base/semanticunits/StatementUnit";
pub const COMPOUND_UNIT: &str = "http://example.com/base/semanticunits/CompoundUnit";
