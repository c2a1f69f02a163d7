use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rdf::{Iri, Term};
use crate::syntax::PrefixTable;

/// A query variable; the name excludes the `?`/`$` sigil and is case-sensitive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Variable(String);

impl Variable {
    pub fn new(name: impl Into<String>) -> Self {
        Self(name.into())
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "?{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TermPattern {
    Term(Term),
    Var(Variable),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PredicatePattern {
    Iri(Iri),
    Var(Variable),
    /// `iri+`: one or more steps along a single predicate.
    OneOrMore(Iri),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriplePattern {
    pub subject: TermPattern,
    pub predicate: PredicatePattern,
    pub object: TermPattern,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphTarget {
    Iri(Iri),
    Var(Variable),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphPattern {
    Bgp(Vec<TriplePattern>),
    Graph {
        name: GraphTarget,
        inner: Box<GraphPattern>,
    },
    Optional(Box<GraphPattern>),
    Filter(Expr),
    Values {
        variable: Variable,
        terms: Vec<Term>,
    },
    Group(Vec<GraphPattern>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Var(Variable),
    Constant(Term),
    Equals(Box<Expr>, Box<Expr>),
    NotEquals(Box<Expr>, Box<Expr>),
    In(Box<Expr>, Vec<Expr>),
    NotIn(Box<Expr>, Vec<Expr>),
    Str(Box<Expr>),
    StrStarts(Box<Expr>, Box<Expr>),
    IsIri(Box<Expr>),
    IsLiteral(Box<Expr>),
    IsBlank(Box<Expr>),
    Bound(Variable),
    Not(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
    Exists(Box<GraphPattern>),
    NotExists(Box<GraphPattern>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Projection {
    Star,
    Variables(Vec<Variable>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderKey {
    pub variable: Variable,
    pub descending: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QueryForm {
    Select { distinct: bool, projection: Projection },
    Construct { template: Vec<TriplePattern> },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Modifiers {
    pub order_by: Vec<OrderKey>,
    pub limit: Option<usize>,
    pub offset: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    pub prefixes: PrefixTable,
    pub form: QueryForm,
    pub where_clause: GraphPattern,
    pub modifiers: Modifiers,
}

impl Query {
    pub fn is_construct(&self) -> bool {
        matches!(self.form, QueryForm::Construct { .. })
    }
}

impl GraphPattern {
    /// Variables in order of first appearance; filters and EXISTS bodies excluded.
    pub fn visible_variables(&self) -> Vec<Variable> {
        let mut out = Vec::new();
        self.collect_visible(&mut out);
        out
    }

    fn collect_visible(&self, out: &mut Vec<Variable>) {
        let mut push = |v: &Variable| {
            if !out.contains(v) {
                out.push(v.clone());
            }
        };
        match self {
            GraphPattern::Bgp(triples) => {
                for t in triples {
                    if let TermPattern::Var(v) = &t.subject {
                        push(v);
                    }
                    if let PredicatePattern::Var(v) = &t.predicate {
                        push(v);
                    }
                    if let TermPattern::Var(v) = &t.object {
                        push(v);
                    }
                }
            }
            GraphPattern::Graph { name, inner } => {
                if let GraphTarget::Var(v) = name {
                    push(v);
                }
                inner.collect_visible(out);
            }
            GraphPattern::Optional(inner) => inner.collect_visible(out),
            GraphPattern::Filter(_) => {}
            GraphPattern::Values { variable, .. } => push(variable),
            GraphPattern::Group(items) => {
                for p in items {
                    p.collect_visible(out);
                }
            }
        }
    }
}
