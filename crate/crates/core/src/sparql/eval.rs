use std::cell::OnceCell;
use std::cmp::Ordering;
use std::collections::{HashMap, HashSet, VecDeque};

use super::ast::*;
use super::QueryError;
use crate::rdf::vocab::{rdf, xsd};
use crate::rdf::{Dataset, GraphName, Iri, Literal, Term, Triple};

/// Rows of variable bindings; `None` marks an absent binding.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Solutions {
    pub variables: Vec<Variable>,
    pub rows: Vec<Vec<Option<Term>>>,
}

impl Solutions {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v.name() == name)
    }

    /// Every binding of one variable, absent bindings skipped.
    pub fn column(&self, name: &str) -> Vec<&Term> {
        match self.column_index(name) {
            None => Vec::new(),
            Some(i) => self.rows.iter().filter_map(|r| r[i].as_ref()).collect(),
        }
    }

    pub fn get(&self, row: usize, name: &str) -> Option<&Term> {
        let i = self.column_index(name)?;
        self.rows.get(row)?.get(i)?.as_ref()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QueryResult {
    Solutions(Solutions),
    /// Deduplicated, in first-constructed order.
    Triples(Vec<Triple>),
}

impl QueryResult {
    pub fn into_solutions(self) -> Option<Solutions> {
        match self {
            QueryResult::Solutions(s) => Some(s),
            QueryResult::Triples(_) => None,
        }
    }

    pub fn into_triples(self) -> Option<Vec<Triple>> {
        match self {
            QueryResult::Triples(t) => Some(t),
            QueryResult::Solutions(_) => None,
        }
    }
}

pub fn evaluate(dataset: &Dataset, query: &Query) -> Result<QueryResult, QueryError> {
    evaluate_with_bindings(dataset, query, &[])
}

/// Evaluates with some variables pre-bound in the single seed row.
pub fn evaluate_with_bindings(
    dataset: &Dataset,
    query: &Query,
    bindings: &[(Variable, Term)],
) -> Result<QueryResult, QueryError> {
    check_graph_nesting(&query.where_clause, false)?;
    let mut ev = Evaluator {
        data: dataset,
        slots: HashMap::new(),
        named_graphs: OnceCell::new(),
    };
    ev.register_pattern(&query.where_clause);
    if let QueryForm::Construct { template } = &query.form {
        for t in template {
            ev.register_triple(t);
        }
    }
    if let QueryForm::Select {
        projection: Projection::Variables(vars),
        ..
    } = &query.form
    {
        for v in vars {
            ev.slot_of(v);
        }
    }
    for key in &query.modifiers.order_by {
        ev.slot_of(&key.variable);
    }
    for (v, _) in bindings {
        ev.slot_of(v);
    }

    let mut seed = vec![None; ev.slots.len()];
    for (v, t) in bindings {
        seed[ev.slots[v]] = Some(t.clone());
    }
    let mut rows = ev.eval(&query.where_clause, vec![seed], &Scope::Union);

    if !query.modifiers.order_by.is_empty() {
        let keys: Vec<(usize, bool)> = query
            .modifiers
            .order_by
            .iter()
            .map(|k| (ev.slots[&k.variable], k.descending))
            .collect();
        rows.sort_by(|a, b| {
            for &(slot, desc) in &keys {
                let ord = order_terms(a[slot].as_ref(), b[slot].as_ref());
                let ord = if desc { ord.reverse() } else { ord };
                if ord != Ordering::Equal {
                    return ord;
                }
            }
            Ordering::Equal
        });
    }

    let skip = query.modifiers.offset.unwrap_or(0);
    let take = query.modifiers.limit.unwrap_or(usize::MAX);

    match &query.form {
        QueryForm::Select { distinct, projection } => {
            let variables = match projection {
                Projection::Star => query.where_clause.visible_variables(),
                Projection::Variables(v) => v.clone(),
            };
            let cols: Vec<usize> = variables.iter().map(|v| ev.slots[v]).collect();
            let mut out: Vec<Vec<Option<Term>>> = Vec::new();
            let mut seen = HashSet::new();
            for row in rows {
                let projected: Vec<Option<Term>> = cols.iter().map(|&c| row[c].clone()).collect();
                if *distinct && !seen.insert(projected.clone()) {
                    continue;
                }
                out.push(projected);
            }
            let rows = out.into_iter().skip(skip).take(take).collect();
            Ok(QueryResult::Solutions(Solutions { variables, rows }))
        }
        QueryForm::Construct { template } => {
            let mut seen = HashSet::new();
            let mut out = Vec::new();
            for row in rows.into_iter().skip(skip).take(take) {
                for t in template {
                    if let Some(triple) = ev.instantiate(t, &row) {
                        if seen.insert(triple.clone()) {
                            out.push(triple);
                        }
                    }
                }
            }
            Ok(QueryResult::Triples(out))
        }
    }
}

fn check_graph_nesting(p: &GraphPattern, inside: bool) -> Result<(), QueryError> {
    match p {
        GraphPattern::Graph { inner, .. } => {
            if inside {
                return Err(QueryError::Eval("GRAPH nested inside GRAPH".into()));
            }
            check_graph_nesting(inner, true)
        }
        GraphPattern::Optional(inner) => check_graph_nesting(inner, inside),
        GraphPattern::Group(items) => items.iter().try_for_each(|i| check_graph_nesting(i, inside)),
        GraphPattern::Filter(e) => check_expr_nesting(e, inside),
        GraphPattern::Bgp(_) | GraphPattern::Values { .. } => Ok(()),
    }
}

fn check_expr_nesting(e: &Expr, inside: bool) -> Result<(), QueryError> {
    match e {
        Expr::Exists(g) | Expr::NotExists(g) => check_graph_nesting(g, inside),
        Expr::Not(a) | Expr::Str(a) | Expr::IsIri(a) | Expr::IsLiteral(a) | Expr::IsBlank(a) => {
            check_expr_nesting(a, inside)
        }
        Expr::And(a, b) | Expr::Or(a, b) | Expr::Equals(a, b) | Expr::NotEquals(a, b) | Expr::StrStarts(a, b) => {
            check_expr_nesting(a, inside)?;
            check_expr_nesting(b, inside)
        }
        Expr::In(a, l) | Expr::NotIn(a, l) => {
            check_expr_nesting(a, inside)?;
            l.iter().try_for_each(|x| check_expr_nesting(x, inside))
        }
        Expr::Var(_) | Expr::Constant(_) | Expr::Bound(_) => Ok(()),
    }
}

/// Total order used by ORDER BY: unbound first, then IRI < blank < literal,
/// then lexical value.
pub fn order_terms(a: Option<&Term>, b: Option<&Term>) -> Ordering {
    fn rank(t: &Term) -> u8 {
        match t {
            Term::Iri(_) => 0,
            Term::BlankNode(_) => 1,
            Term::Literal(_) => 2,
        }
    }
    match (a, b) {
        (None, None) => Ordering::Equal,
        (None, Some(_)) => Ordering::Less,
        (Some(_), None) => Ordering::Greater,
        (Some(a), Some(b)) => rank(a)
            .cmp(&rank(b))
            .then_with(|| a.value().cmp(b.value()))
            .then_with(|| a.cmp(b)),
    }
}

type Row = Vec<Option<Term>>;

enum Scope {
    /// Union of the default graph and every named graph.
    Union,
    Graph(GraphName),
    /// `GRAPH ?g`: the graph comes from the row, or is enumerated and bound.
    GraphVar(usize),
}

enum Value {
    Term(Term),
    Bool(bool),
}

struct Evaluator<'d> {
    data: &'d Dataset,
    slots: HashMap<Variable, usize>,
    named_graphs: OnceCell<Vec<Iri>>,
}

impl Evaluator<'_> {
    fn slot_of(&mut self, v: &Variable) -> usize {
        let n = self.slots.len();
        *self.slots.entry(v.clone()).or_insert(n)
    }

    fn register_triple(&mut self, t: &TriplePattern) {
        if let TermPattern::Var(v) = &t.subject {
            self.slot_of(v);
        }
        if let PredicatePattern::Var(v) = &t.predicate {
            self.slot_of(v);
        }
        if let TermPattern::Var(v) = &t.object {
            self.slot_of(v);
        }
    }

    fn register_pattern(&mut self, p: &GraphPattern) {
        match p {
            GraphPattern::Bgp(ts) => ts.iter().for_each(|t| self.register_triple(t)),
            GraphPattern::Graph { name, inner } => {
                if let GraphTarget::Var(v) = name {
                    self.slot_of(v);
                }
                self.register_pattern(inner);
            }
            GraphPattern::Optional(inner) => self.register_pattern(inner),
            GraphPattern::Filter(e) => self.register_expr(e),
            GraphPattern::Values { variable, .. } => {
                self.slot_of(variable);
            }
            GraphPattern::Group(items) => items.iter().for_each(|i| self.register_pattern(i)),
        }
    }

    fn register_expr(&mut self, e: &Expr) {
        match e {
            Expr::Var(v) | Expr::Bound(v) => {
                self.slot_of(v);
            }
            Expr::Constant(_) => {}
            Expr::Exists(g) | Expr::NotExists(g) => self.register_pattern(g),
            Expr::Not(a) | Expr::Str(a) | Expr::IsIri(a) | Expr::IsLiteral(a) | Expr::IsBlank(a) => {
                self.register_expr(a)
            }
            Expr::And(a, b) | Expr::Or(a, b) | Expr::Equals(a, b) | Expr::NotEquals(a, b) | Expr::StrStarts(a, b) => {
                self.register_expr(a);
                self.register_expr(b);
            }
            Expr::In(a, l) | Expr::NotIn(a, l) => {
                self.register_expr(a);
                l.iter().for_each(|x| self.register_expr(x));
            }
        }
    }

    fn named_graphs(&self) -> &[Iri] {
        self.named_graphs.get_or_init(|| {
            self.data
                .graphs()
                .into_iter()
                .filter_map(|g| g.as_iri().cloned())
                .collect()
        })
    }

    fn eval(&self, p: &GraphPattern, rows: Vec<Row>, scope: &Scope) -> Vec<Row> {
        if rows.is_empty() {
            return rows;
        }
        match p {
            GraphPattern::Group(items) => self.eval_group(items, rows, scope),
            GraphPattern::Bgp(triples) => self.eval_bgp(triples, rows, scope),
            GraphPattern::Filter(e) => rows
                .into_iter()
                .filter(|r| self.ebv(e, r, scope) == Some(true))
                .collect(),
            GraphPattern::Optional(inner) => {
                let mut out = Vec::new();
                for row in rows {
                    let extended = self.eval(inner, vec![row.clone()], scope);
                    if extended.is_empty() {
                        out.push(row);
                    } else {
                        out.extend(extended);
                    }
                }
                out
            }
            GraphPattern::Values { variable, terms } => {
                let slot = self.slots[variable];
                let mut out = Vec::new();
                for row in rows {
                    match &row[slot] {
                        Some(bound) => {
                            if terms.contains(bound) {
                                out.push(row);
                            }
                        }
                        None => {
                            for t in terms {
                                let mut r = row.clone();
                                r[slot] = Some(t.clone());
                                out.push(r);
                            }
                        }
                    }
                }
                out
            }
            GraphPattern::Graph { name, inner } => match name {
                GraphTarget::Iri(iri) => self.eval(inner, rows, &Scope::Graph(GraphName::Named(iri.clone()))),
                GraphTarget::Var(v) => {
                    let slot = self.slots[v];
                    let mut out = Vec::new();
                    for row in self.eval(inner, rows, &Scope::GraphVar(slot)) {
                        match &row[slot] {
                            Some(Term::Iri(g)) => {
                                if self.named_graphs().binary_search(g).is_ok() {
                                    out.push(row);
                                }
                            }
                            Some(_) => {}
                            None => {
                                for g in self.named_graphs() {
                                    let mut r = row.clone();
                                    r[slot] = Some(Term::Iri(g.clone()));
                                    out.push(r);
                                }
                            }
                        }
                    }
                    out
                }
            },
        }
    }

    /// Filters apply to the whole group once its other members are joined.
    fn eval_group(&self, items: &[GraphPattern], mut rows: Vec<Row>, scope: &Scope) -> Vec<Row> {
        let mut filters = Vec::new();
        for item in items {
            match item {
                GraphPattern::Filter(e) => filters.push(e),
                other => rows = self.eval(other, rows, scope),
            }
        }
        if !filters.is_empty() {
            rows.retain(|r| filters.iter().all(|f| self.ebv(f, r, scope) == Some(true)));
        }
        rows
    }

    fn eval_bgp(&self, triples: &[TriplePattern], mut rows: Vec<Row>, scope: &Scope) -> Vec<Row> {
        let mut remaining: Vec<&TriplePattern> = triples.iter().collect();
        let mut bound: HashSet<usize> = match rows.first() {
            Some(r) => r
                .iter()
                .enumerate()
                .filter(|(_, t)| t.is_some())
                .map(|(i, _)| i)
                .collect(),
            None => HashSet::new(),
        };
        while !remaining.is_empty() && !rows.is_empty() {
            // greedy: most bound positions first, ties by written order
            let pick = (0..remaining.len())
                .max_by_key(|&i| (self.boundness(remaining[i], &bound), std::cmp::Reverse(i)))
                .unwrap();
            let tp = remaining.remove(pick);
            rows = rows.iter().flat_map(|row| self.match_triple(tp, row, scope)).collect();
            for v in self.pattern_slots(tp) {
                bound.insert(v);
            }
        }
        rows
    }

    fn boundness(&self, tp: &TriplePattern, bound: &HashSet<usize>) -> usize {
        let term = |t: &TermPattern| match t {
            TermPattern::Term(_) => 1,
            TermPattern::Var(v) => usize::from(bound.contains(&self.slots[v])),
        };
        let pred = match &tp.predicate {
            PredicatePattern::Iri(_) => 1,
            PredicatePattern::OneOrMore(_) => 0,
            PredicatePattern::Var(v) => usize::from(bound.contains(&self.slots[v])),
        };
        // subject and object selectivity outweigh the predicate
        2 * term(&tp.subject) + 2 * term(&tp.object) + pred
    }

    fn pattern_slots(&self, tp: &TriplePattern) -> Vec<usize> {
        let mut out = Vec::new();
        if let TermPattern::Var(v) = &tp.subject {
            out.push(self.slots[v]);
        }
        if let PredicatePattern::Var(v) = &tp.predicate {
            out.push(self.slots[v]);
        }
        if let TermPattern::Var(v) = &tp.object {
            out.push(self.slots[v]);
        }
        out
    }

    fn resolve(&self, t: &TermPattern, row: &Row) -> Option<Term> {
        match t {
            TermPattern::Term(t) => Some(t.clone()),
            TermPattern::Var(v) => row[self.slots[v]].clone(),
        }
    }

    /// Graphs to search for one row: `Err(())` means nothing can match,
    /// `Ok(None)` means the union, and a slot is returned when the graph
    /// variable still has to be bound from each quad.
    fn row_graph(&self, scope: &Scope, row: &Row) -> Result<(Option<GraphName>, Option<usize>), ()> {
        match scope {
            Scope::Union => Ok((None, None)),
            Scope::Graph(g) => Ok((Some(g.clone()), None)),
            Scope::GraphVar(slot) => match &row[*slot] {
                None => Ok((None, Some(*slot))),
                Some(Term::Iri(i)) => Ok((Some(GraphName::Named(i.clone())), None)),
                Some(_) => Err(()),
            },
        }
    }

    fn match_triple(&self, tp: &TriplePattern, row: &Row, scope: &Scope) -> Vec<Row> {
        if let PredicatePattern::OneOrMore(p) = &tp.predicate {
            return self.match_path(tp, p, row, scope);
        }
        let Ok((graph, graph_slot)) = self.row_graph(scope, row) else {
            return Vec::new();
        };
        let s = self.resolve(&tp.subject, row);
        let p = match &tp.predicate {
            PredicatePattern::Iri(i) => Some(i.clone()),
            PredicatePattern::Var(v) => match &row[self.slots[v]] {
                None => None,
                Some(Term::Iri(i)) => Some(i.clone()),
                Some(_) => return Vec::new(),
            },
            PredicatePattern::OneOrMore(_) => unreachable!(),
        };
        let o = self.resolve(&tp.object, row);
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        for q in self
            .data
            .quads_matching(s.as_ref(), p.as_ref(), o.as_ref(), graph.as_ref())
        {
            let graph_term = match (&q.graph, graph_slot) {
                (GraphName::Default, Some(_)) => continue,
                (GraphName::Named(g), Some(_)) => Some(Term::Iri(g.clone())),
                _ => None,
            };
            if graph.is_none() && graph_slot.is_none() && !seen.insert(q.triple()) {
                continue;
            }
            let mut r = row.clone();
            let ok = self.bind_term(&mut r, &tp.subject, q.subject.into())
                && match &tp.predicate {
                    PredicatePattern::Var(v) => bind(&mut r, self.slots[v], Term::Iri(q.predicate)),
                    _ => true,
                }
                && self.bind_term(&mut r, &tp.object, q.object)
                && match (graph_slot, graph_term) {
                    (Some(slot), Some(t)) => bind(&mut r, slot, t),
                    _ => true,
                };
            if ok {
                out.push(r);
            }
        }
        out
    }

    fn bind_term(&self, row: &mut Row, pattern: &TermPattern, value: Term) -> bool {
        match pattern {
            TermPattern::Var(v) => bind(row, self.slots[v], value),
            TermPattern::Term(_) => true,
        }
    }

    fn match_path(&self, tp: &TriplePattern, p: &Iri, row: &Row, scope: &Scope) -> Vec<Row> {
        let Ok((graph, graph_slot)) = self.row_graph(scope, row) else {
            return Vec::new();
        };
        let graphs: Vec<(Option<GraphName>, Option<Term>)> = match graph_slot {
            None => vec![(graph, None)],
            Some(_) => self
                .named_graphs()
                .iter()
                .map(|g| (Some(GraphName::Named(g.clone())), Some(Term::Iri(g.clone()))))
                .collect(),
        };
        let s = self.resolve(&tp.subject, row);
        let o = self.resolve(&tp.object, row);
        let mut out = Vec::new();
        for (g, g_term) in graphs {
            for (from, to) in self.closure_pairs(p, s.as_ref(), o.as_ref(), g.as_ref()) {
                let mut r = row.clone();
                let ok = self.bind_term(&mut r, &tp.subject, from)
                    && self.bind_term(&mut r, &tp.object, to)
                    && match (graph_slot, &g_term) {
                        (Some(slot), Some(t)) => bind(&mut r, slot, t.clone()),
                        _ => true,
                    };
                if ok {
                    out.push(r);
                }
            }
        }
        out
    }

    /// Pairs `(x, y)` with a path of one or more `p` edges from x to y.
    fn closure_pairs(
        &self,
        p: &Iri,
        s: Option<&Term>,
        o: Option<&Term>,
        graph: Option<&GraphName>,
    ) -> Vec<(Term, Term)> {
        match (s, o) {
            (Some(s), _) => {
                let reach = self.reach(p, s, graph, true);
                reach
                    .into_iter()
                    .filter(|y| o.is_none_or(|o| o == y))
                    .map(|y| (s.clone(), y))
                    .collect()
            }
            (None, Some(o)) => self
                .reach(p, o, graph, false)
                .into_iter()
                .map(|x| (x, o.clone()))
                .collect(),
            (None, None) => {
                let mut starts: Vec<Term> = self
                    .data
                    .quads_matching(None, Some(p), None, graph)
                    .map(|q| q.subject.into())
                    .collect();
                starts.sort();
                starts.dedup();
                let mut out = Vec::new();
                for s in starts {
                    for y in self.reach(p, &s, graph, true) {
                        out.push((s.clone(), y));
                    }
                }
                out
            }
        }
    }

    /// Nodes reachable from `start` in one or more steps, in BFS order.
    fn reach(&self, p: &Iri, start: &Term, graph: Option<&GraphName>, forward: bool) -> Vec<Term> {
        let mut seen: HashSet<Term> = HashSet::new();
        let mut order = Vec::new();
        let mut queue = VecDeque::from([start.clone()]);
        while let Some(n) = queue.pop_front() {
            let next: Vec<Term> = if forward {
                self.data
                    .quads_matching(Some(&n), Some(p), None, graph)
                    .map(|q| q.object)
                    .collect()
            } else {
                self.data
                    .quads_matching(None, Some(p), Some(&n), graph)
                    .map(|q| q.subject.into())
                    .collect()
            };
            for m in next {
                if seen.insert(m.clone()) {
                    order.push(m.clone());
                    queue.push_back(m);
                }
            }
        }
        order
    }

    fn instantiate(&self, t: &TriplePattern, row: &Row) -> Option<Triple> {
        let s = self.resolve(&t.subject, row)?;
        let p = match &t.predicate {
            PredicatePattern::Iri(i) => Term::Iri(i.clone()),
            PredicatePattern::Var(v) => row[self.slots[v]].clone()?,
            PredicatePattern::OneOrMore(_) => return None,
        };
        let o = self.resolve(&t.object, row)?;
        Triple::from_terms(s, p, o).ok()
    }

    fn eval_expr(&self, e: &Expr, row: &Row, scope: &Scope) -> Option<Value> {
        Some(match e {
            Expr::Var(v) => Value::Term(row[self.slots[v]].clone()?),
            Expr::Constant(t) => Value::Term(t.clone()),
            Expr::Equals(a, b) => Value::Bool(self.equals(a, b, row, scope)?),
            Expr::NotEquals(a, b) => Value::Bool(!self.equals(a, b, row, scope)?),
            Expr::In(a, list) => Value::Bool(self.member(a, list, row, scope)?),
            Expr::NotIn(a, list) => Value::Bool(!self.member(a, list, row, scope)?),
            Expr::Str(a) => match self.eval_expr(a, row, scope)? {
                Value::Term(Term::Iri(i)) => Value::Term(Literal::simple(i.as_str()).into()),
                Value::Term(Term::Literal(l)) => Value::Term(Literal::simple(l.lexical()).into()),
                Value::Term(Term::BlankNode(_)) => return None,
                Value::Bool(b) => Value::Term(Literal::simple(b.to_string()).into()),
            },
            Expr::StrStarts(a, b) => {
                let a = string_arg(self.eval_expr(a, row, scope)?)?;
                let b = string_arg(self.eval_expr(b, row, scope)?)?;
                if b.1.is_some() && a.1 != b.1 {
                    return None;
                }
                Value::Bool(a.0.starts_with(&b.0))
            }
            Expr::IsIri(a) => Value::Bool(matches!(self.eval_expr(a, row, scope)?, Value::Term(Term::Iri(_)))),
            Expr::IsBlank(a) => Value::Bool(matches!(
                self.eval_expr(a, row, scope)?,
                Value::Term(Term::BlankNode(_))
            )),
            Expr::IsLiteral(a) => Value::Bool(matches!(
                self.eval_expr(a, row, scope)?,
                Value::Term(Term::Literal(_)) | Value::Bool(_)
            )),
            Expr::Bound(v) => Value::Bool(row[self.slots[v]].is_some()),
            Expr::Not(a) => Value::Bool(!self.ebv(a, row, scope)?),
            Expr::And(a, b) => match (self.ebv(a, row, scope), self.ebv(b, row, scope)) {
                (Some(false), _) | (_, Some(false)) => Value::Bool(false),
                (Some(true), Some(true)) => Value::Bool(true),
                _ => return None,
            },
            Expr::Or(a, b) => match (self.ebv(a, row, scope), self.ebv(b, row, scope)) {
                (Some(true), _) | (_, Some(true)) => Value::Bool(true),
                (Some(false), Some(false)) => Value::Bool(false),
                _ => return None,
            },
            Expr::Exists(g) => Value::Bool(!self.eval(g, vec![row.clone()], scope).is_empty()),
            Expr::NotExists(g) => Value::Bool(self.eval(g, vec![row.clone()], scope).is_empty()),
        })
    }

    fn equals(&self, a: &Expr, b: &Expr, row: &Row, scope: &Scope) -> Option<bool> {
        let a = as_term(self.eval_expr(a, row, scope)?);
        let b = as_term(self.eval_expr(b, row, scope)?);
        Some(terms_equal(&a, &b))
    }

    fn member(&self, a: &Expr, list: &[Expr], row: &Row, scope: &Scope) -> Option<bool> {
        let a = as_term(self.eval_expr(a, row, scope)?);
        let mut errored = false;
        for x in list {
            match self.eval_expr(x, row, scope) {
                Some(v) => {
                    if terms_equal(&a, &as_term(v)) {
                        return Some(true);
                    }
                }
                None => errored = true,
            }
        }
        if errored {
            None
        } else {
            Some(false)
        }
    }

    /// Effective boolean value; `None` is an evaluation error.
    fn ebv(&self, e: &Expr, row: &Row, scope: &Scope) -> Option<bool> {
        match self.eval_expr(e, row, scope)? {
            Value::Bool(b) => Some(b),
            Value::Term(Term::Literal(l)) => {
                let dt = l.datatype().as_str();
                if dt == xsd::BOOLEAN {
                    Some(l.lexical() == "true" || l.lexical() == "1")
                } else if let Some(n) = numeric_value(&l) {
                    Some(n != 0.0 && !n.is_nan())
                } else if dt == xsd::STRING || dt == rdf::LANG_STRING {
                    Some(!l.lexical().is_empty())
                } else {
                    None
                }
            }
            Value::Term(_) => None,
        }
    }
}

fn bind(row: &mut Row, slot: usize, value: Term) -> bool {
    match &row[slot] {
        Some(existing) => *existing == value,
        None => {
            row[slot] = Some(value);
            true
        }
    }
}

fn as_term(v: Value) -> Term {
    match v {
        Value::Term(t) => t,
        Value::Bool(b) => Literal::typed(b.to_string(), Iri::new_unchecked(xsd::BOOLEAN))
            .expect("boolean datatype")
            .into(),
    }
}

fn numeric_value(l: &Literal) -> Option<f64> {
    match l.datatype().as_str() {
        xsd::INTEGER | xsd::DECIMAL | xsd::DOUBLE => l.lexical().parse().ok(),
        _ => None,
    }
}

fn terms_equal(a: &Term, b: &Term) -> bool {
    if let (Term::Literal(x), Term::Literal(y)) = (a, b) {
        if let (Some(m), Some(n)) = (numeric_value(x), numeric_value(y)) {
            return m == n;
        }
    }
    a == b
}

/// Lexical form and language of a string literal argument.
fn string_arg(v: Value) -> Option<(String, Option<String>)> {
    match v {
        Value::Term(Term::Literal(l))
            if l.datatype().as_str() == xsd::STRING || l.datatype().as_str() == rdf::LANG_STRING =>
        {
            Some((l.lexical().to_string(), l.language().map(str::to_string)))
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sparql::parse_query;
    use crate::syntax::parse_trig;

    fn data() -> Dataset {
        parse_trig(
            r#"
            @prefix ex: <http://x/> .
            ex:a ex:p ex:b .
            ex:b ex:p ex:c .
            ex:a ex:label "A"@en .
            ex:g1 { ex:a ex:p ex:b . ex:a ex:q "1" . }
            ex:g2 { ex:c ex:q "2" . }
            "#,
        )
        .unwrap()
        .0
    }

    fn select(d: &Dataset, q: &str) -> Solutions {
        evaluate(d, &parse_query(q).unwrap()).unwrap().into_solutions().unwrap()
    }

    #[test]
    fn union_default_deduplicates() {
        let s = select(&data(), "SELECT ?s ?o WHERE { ?s <http://x/p> ?o }");
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn graph_variable_binds_named_graphs_only() {
        let s = select(
            &data(),
            "SELECT ?g WHERE { GRAPH ?g { ?s <http://x/q> ?o } } ORDER BY ?g",
        );
        let gs: Vec<&str> = s.column("g").iter().map(|t| t.value()).collect();
        assert_eq!(gs, ["http://x/g1", "http://x/g2"]);
    }

    #[test]
    fn path_closure_on_chain() {
        let s = select(&data(), "SELECT ?x ?y WHERE { ?x <http://x/p>+ ?y } ORDER BY ?x ?y");
        let pairs: Vec<(&str, &str)> = s
            .rows
            .iter()
            .map(|r| (r[0].as_ref().unwrap().value(), r[1].as_ref().unwrap().value()))
            .collect();
        assert_eq!(
            pairs,
            [
                ("http://x/a", "http://x/b"),
                ("http://x/a", "http://x/c"),
                ("http://x/b", "http://x/c")
            ]
        );
    }

    #[test]
    fn optional_keeps_unmatched_rows() {
        let s = select(
            &data(),
            "SELECT ?s ?l WHERE { ?s <http://x/p> ?o OPTIONAL { ?s <http://x/label> ?l } } ORDER BY ?s",
        );
        assert_eq!(s.len(), 2);
        assert!(s.rows[0][1].is_some());
        assert!(s.rows[1][1].is_none());
    }

    #[test]
    fn filter_errors_are_false() {
        let s = select(
            &data(),
            "SELECT ?s WHERE { ?s <http://x/p> ?o OPTIONAL { ?s <http://x/label> ?l } FILTER(STRSTARTS(STR(?l), \"A\")) }",
        );
        assert_eq!(s.len(), 1);
        let s = select(
            &data(),
            "SELECT ?s WHERE { ?s <http://x/p> ?o OPTIONAL { ?s <http://x/label> ?l } FILTER(!BOUND(?l)) }",
        );
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn unbound_projection_is_allowed() {
        let s = select(&data(), "SELECT ?nothing WHERE { ?s <http://x/p> ?o }");
        assert_eq!(s.len(), 2);
        assert!(s.rows.iter().all(|r| r[0].is_none()));
    }

    #[test]
    fn order_then_distinct_then_limit() {
        let s = select(&data(), "SELECT DISTINCT ?s WHERE { ?s ?p ?o } ORDER BY ?s LIMIT 2");
        let v: Vec<&str> = s.column("s").iter().map(|t| t.value()).collect();
        assert_eq!(v, ["http://x/a", "http://x/b"]);
    }

    #[test]
    fn construct_deduplicates() {
        let q = parse_query("CONSTRUCT { ?s <http://x/r> ?o } WHERE { ?s ?p ?o }").unwrap();
        let t = evaluate(&data(), &q).unwrap().into_triples().unwrap();
        let distinct: HashSet<_> = t.iter().collect();
        assert_eq!(t.len(), distinct.len());
        // literal subjects from ?o never become triples
        let q = parse_query("CONSTRUCT { ?o <http://x/r> ?s } WHERE { ?s ?p ?o }").unwrap();
        let t = evaluate(&data(), &q).unwrap().into_triples().unwrap();
        assert!(t.iter().all(|t| t.subject.as_iri().is_some()));
    }

    #[test]
    fn pre_bound_variables() {
        let q = parse_query("SELECT ?o WHERE { $this <http://x/p> ?o }").unwrap();
        let r = evaluate_with_bindings(
            &data(),
            &q,
            &[(Variable::new("this"), Term::iri("http://x/b").unwrap())],
        )
        .unwrap()
        .into_solutions()
        .unwrap();
        assert_eq!(r.column("o")[0].value(), "http://x/c");
    }

    #[test]
    fn not_exists_in_graph_scope() {
        let s = select(
            &data(),
            "SELECT ?s WHERE { GRAPH <http://x/g1> { ?s <http://x/p> ?o FILTER NOT EXISTS { ?o <http://x/p> ?z } } }",
        );
        // ex:b ex:p ex:c lives only in the default graph
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn ordering_across_kinds() {
        let iri = Term::iri("http://z").unwrap();
        let blank: Term = crate::rdf::BlankNode::new("a").unwrap().into();
        let lit: Term = Literal::simple("a").into();
        assert_eq!(order_terms(Some(&iri), Some(&blank)), Ordering::Less);
        assert_eq!(order_terms(Some(&blank), Some(&lit)), Ordering::Less);
        assert_eq!(order_terms(None, Some(&iri)), Ordering::Less);
    }
}
