use super::ast::*;
use super::QueryError;
use crate::rdf::vocab::{rdf, xsd};
use crate::rdf::{Iri, Literal, Term};
use crate::syntax::cursor::{is_name_char, resolve_iri, Cursor};
use crate::syntax::{ParseError, PrefixTable};

type PResult<T> = Result<T, QueryError>;
type UnaryBuilder = fn(Box<Expr>) -> Expr;

/// Parses a query using only the prefixes it declares itself.
pub fn parse_query(text: &str) -> Result<Query, QueryError> {
    parse_query_with_prefixes(text, &PrefixTable::new())
}

/// Parses a query; `defaults` supplies prefixes the text does not declare.
pub fn parse_query_with_prefixes(text: &str, defaults: &PrefixTable) -> Result<Query, QueryError> {
    let mut p = QueryParser {
        cur: Cursor::new(text),
        prefixes: defaults.clone(),
        declared: PrefixTable::new(),
        base: None,
        in_graph: false,
    };
    p.query()
}

struct QueryParser<'a> {
    cur: Cursor<'a>,
    prefixes: PrefixTable,
    declared: PrefixTable,
    base: Option<String>,
    in_graph: bool,
}

impl From<ParseError> for QueryError {
    fn from(e: ParseError) -> Self {
        QueryError::Parse(e)
    }
}

impl QueryParser<'_> {
    fn unsupported(&self, feature: &str) -> QueryError {
        let e = self.cur.error(format!("unsupported SPARQL feature: {feature}"));
        QueryError::Unsupported {
            feature: feature.to_string(),
            line: e.line,
            column: e.column,
        }
    }

    fn ws(&mut self) {
        self.cur.skip_ws();
    }

    fn query(&mut self) -> PResult<Query> {
        self.prologue()?;
        self.ws();
        let form = if self.cur.eat_keyword("SELECT") {
            self.select_clause()?
        } else if self.cur.eat_keyword("CONSTRUCT") {
            self.ws();
            if self.cur.peek_keyword("WHERE") {
                return Err(self.unsupported("CONSTRUCT WHERE"));
            }
            QueryForm::Construct {
                template: self.construct_template()?,
            }
        } else {
            for kw in ["ASK", "DESCRIBE"] {
                if self.cur.peek_keyword(kw) {
                    return Err(self.unsupported(kw));
                }
            }
            for kw in [
                "INSERT", "DELETE", "LOAD", "CLEAR", "DROP", "CREATE", "ADD", "MOVE", "COPY", "WITH",
            ] {
                if self.cur.peek_keyword(kw) {
                    return Err(self.unsupported("UPDATE"));
                }
            }
            return Err(self.cur.unexpected("SELECT or CONSTRUCT").into());
        };
        self.ws();
        for kw in ["FROM"] {
            if self.cur.peek_keyword(kw) {
                return Err(self.unsupported(kw));
            }
        }
        self.cur.eat_keyword("WHERE");
        self.ws();
        let where_clause = self.group()?;
        let modifiers = self.modifiers()?;
        self.ws();
        if !self.cur.at_end() {
            if self.cur.peek_keyword("VALUES") {
                return Err(self.unsupported("trailing VALUES"));
            }
            return Err(self.cur.unexpected("end of query").into());
        }
        Ok(Query {
            prefixes: self.declared.clone(),
            form,
            where_clause,
            modifiers,
        })
    }

    fn prologue(&mut self) -> PResult<()> {
        loop {
            self.ws();
            if self.cur.eat_keyword("PREFIX") {
                self.ws();
                let at = self.cur.pos();
                let label = self
                    .cur
                    .read_pname_prefix()
                    .ok_or_else(|| self.cur.error_at(at, "expected prefix label"))?;
                self.ws();
                let iri = self.iriref()?;
                self.prefixes.insert(label.clone(), iri.clone());
                self.declared.insert(label, iri);
            } else if self.cur.eat_keyword("BASE") {
                self.ws();
                let iri = self.iriref()?;
                self.base = Some(iri.into_string());
            } else {
                return Ok(());
            }
        }
    }

    fn select_clause(&mut self) -> PResult<QueryForm> {
        self.ws();
        let distinct = self.cur.eat_keyword("DISTINCT");
        self.ws();
        if self.cur.peek_keyword("REDUCED") {
            return Err(self.unsupported("REDUCED"));
        }
        if self.cur.eat('*') {
            return Ok(QueryForm::Select {
                distinct,
                projection: Projection::Star,
            });
        }
        let mut vars = Vec::new();
        loop {
            self.ws();
            match self.cur.peek() {
                Some('?' | '$') => vars.push(self.var()?),
                Some('(') => return Err(self.unsupported("SELECT expression")),
                _ => break,
            }
        }
        if vars.is_empty() {
            return Err(self.cur.unexpected("projection variable or '*'").into());
        }
        Ok(QueryForm::Select {
            distinct,
            projection: Projection::Variables(vars),
        })
    }

    fn construct_template(&mut self) -> PResult<Vec<TriplePattern>> {
        self.ws();
        self.cur.expect('{')?;
        let mut out = Vec::new();
        loop {
            self.ws();
            if self.cur.eat('}') {
                return Ok(out);
            }
            if self.cur.peek_keyword("GRAPH") {
                return Err(self.unsupported("GRAPH in CONSTRUCT template"));
            }
            self.triples_same_subject(&mut out)?;
            self.ws();
            if !self.cur.eat('.') && self.cur.peek() != Some('}') {
                return Err(self.cur.unexpected("'.' or '}'").into());
            }
        }
    }

    fn modifiers(&mut self) -> PResult<Modifiers> {
        let mut m = Modifiers::default();
        self.ws();
        for kw in ["GROUP", "HAVING"] {
            if self.cur.peek_keyword(kw) {
                return Err(self.unsupported(kw));
            }
        }
        if self.cur.eat_keyword("ORDER") {
            self.ws();
            if !self.cur.eat_keyword("BY") {
                return Err(self.cur.unexpected("BY").into());
            }
            loop {
                self.ws();
                let descending = if self.cur.eat_keyword("DESC") {
                    true
                } else {
                    self.cur.eat_keyword("ASC");
                    false
                };
                self.ws();
                let wrapped = self.cur.eat('(');
                self.ws();
                match self.cur.peek() {
                    Some('?' | '$') => {}
                    None => break,
                    _ if wrapped || descending => return Err(self.unsupported("ORDER BY expression")),
                    _ => break,
                }
                let variable = self.var()?;
                if wrapped {
                    self.ws();
                    self.cur.expect(')')?;
                }
                m.order_by.push(OrderKey { variable, descending });
            }
            if m.order_by.is_empty() {
                return Err(self.cur.unexpected("ORDER BY variable").into());
            }
        }
        for _ in 0..2 {
            self.ws();
            if self.cur.eat_keyword("LIMIT") {
                self.ws();
                m.limit = Some(self.unsigned()?);
            } else if self.cur.eat_keyword("OFFSET") {
                self.ws();
                m.offset = Some(self.unsigned()?);
            }
        }
        Ok(m)
    }

    fn unsigned(&mut self) -> PResult<usize> {
        let start = self.cur.pos();
        let mut digits = String::new();
        while let Some(c) = self.cur.peek().filter(char::is_ascii_digit) {
            digits.push(c);
            self.cur.bump();
        }
        digits
            .parse()
            .map_err(|_| self.cur.error_at(start, "expected a non-negative integer").into())
    }

    fn group(&mut self) -> PResult<GraphPattern> {
        self.ws();
        self.cur.expect('{')?;
        self.ws();
        if self.cur.peek_keyword("SELECT") {
            return Err(self.unsupported("subquery"));
        }
        let mut items: Vec<GraphPattern> = Vec::new();
        let mut triples: Vec<TriplePattern> = Vec::new();
        let flush = |items: &mut Vec<GraphPattern>, triples: &mut Vec<TriplePattern>| {
            if !triples.is_empty() {
                items.push(GraphPattern::Bgp(std::mem::take(triples)));
            }
        };
        loop {
            self.ws();
            if self.cur.eat('}') {
                break;
            }
            if self.cur.eat('.') {
                continue;
            }
            if self.cur.eat_keyword("OPTIONAL") {
                flush(&mut items, &mut triples);
                let inner = self.group()?;
                items.push(GraphPattern::Optional(Box::new(inner)));
            } else if self.cur.peek_keyword("GRAPH") {
                if self.in_graph {
                    return Err(self.unsupported("nested GRAPH"));
                }
                self.cur.eat_keyword("GRAPH");
                flush(&mut items, &mut triples);
                self.ws();
                let name = match self.cur.peek() {
                    Some('?' | '$') => GraphTarget::Var(self.var()?),
                    _ => GraphTarget::Iri(self.iri()?),
                };
                self.in_graph = true;
                let inner = self.group();
                self.in_graph = false;
                items.push(GraphPattern::Graph {
                    name,
                    inner: Box::new(inner?),
                });
            } else if self.cur.eat_keyword("FILTER") {
                flush(&mut items, &mut triples);
                self.ws();
                let e = self.constraint()?;
                items.push(GraphPattern::Filter(e));
            } else if self.cur.eat_keyword("VALUES") {
                flush(&mut items, &mut triples);
                items.push(self.values()?);
            } else if self.cur.peek() == Some('{') {
                flush(&mut items, &mut triples);
                let inner = self.group()?;
                self.ws();
                if self.cur.peek_keyword("UNION") {
                    return Err(self.unsupported("UNION"));
                }
                items.push(inner);
            } else {
                for kw in ["MINUS", "BIND", "SERVICE", "UNION"] {
                    if self.cur.peek_keyword(kw) {
                        return Err(self.unsupported(kw));
                    }
                }
                self.triples_same_subject(&mut triples)?;
                self.ws();
                if !self.cur.eat('.') && self.cur.peek() != Some('}') {
                    let at_keyword = ["OPTIONAL", "GRAPH", "FILTER", "VALUES", "MINUS", "BIND", "SERVICE"]
                        .iter()
                        .any(|k| self.cur.peek_keyword(k))
                        || self.cur.peek() == Some('{');
                    if !at_keyword {
                        return Err(self.cur.unexpected("'.' or '}'").into());
                    }
                }
            }
        }
        flush(&mut items, &mut triples);
        Ok(GraphPattern::Group(items))
    }

    fn values(&mut self) -> PResult<GraphPattern> {
        self.ws();
        if self.cur.peek() == Some('(') {
            return Err(self.unsupported("multi-variable VALUES"));
        }
        let variable = self.var()?;
        self.ws();
        self.cur.expect('{')?;
        let mut terms = Vec::new();
        loop {
            self.ws();
            if self.cur.eat('}') {
                break;
            }
            if self.cur.peek_keyword("UNDEF") {
                return Err(self.unsupported("UNDEF"));
            }
            terms.push(self.constant_term()?);
        }
        Ok(GraphPattern::Values { variable, terms })
    }

    fn triples_same_subject(&mut self, out: &mut Vec<TriplePattern>) -> PResult<()> {
        let subject = self.term_pattern("subject")?;
        loop {
            self.ws();
            let predicate = self.verb()?;
            loop {
                self.ws();
                let object = self.term_pattern("object")?;
                out.push(TriplePattern {
                    subject: subject.clone(),
                    predicate: predicate.clone(),
                    object,
                });
                self.ws();
                if !self.cur.eat(',') {
                    break;
                }
            }
            self.ws();
            if !self.cur.eat(';') {
                return Ok(());
            }
            self.ws();
            while self.cur.eat(';') {
                self.ws();
            }
            if matches!(self.cur.peek(), Some('.' | '}')) {
                return Ok(());
            }
        }
    }

    fn verb(&mut self) -> PResult<PredicatePattern> {
        match self.cur.peek() {
            Some('?' | '$') => return Ok(PredicatePattern::Var(self.var()?)),
            Some('^') => return Err(self.unsupported("inverse path")),
            Some('!') => return Err(self.unsupported("negated property set")),
            Some('(') => return Err(self.unsupported("grouped property path")),
            _ => {}
        }
        let iri = if self.cur.peek() == Some('a')
            && !matches!(self.cur.peek_nth(1), Some(c) if is_name_char(c) || c == ':')
        {
            self.cur.bump();
            Iri::new_unchecked(rdf::TYPE)
        } else {
            self.iri()?
        };
        match self.cur.peek() {
            Some('+') => {
                self.cur.bump();
                Ok(PredicatePattern::OneOrMore(iri))
            }
            Some('*') => Err(self.unsupported("path '*'")),
            Some('?') if !matches!(self.cur.peek_nth(1), Some(c) if is_name_char(c)) => {
                Err(self.unsupported("path '?'"))
            }
            Some('/') => Err(self.unsupported("sequence path")),
            Some('|') => Err(self.unsupported("alternative path")),
            _ => {
                self.ws();
                match self.cur.peek() {
                    Some('/') => Err(self.unsupported("sequence path")),
                    Some('|') => Err(self.unsupported("alternative path")),
                    _ => Ok(PredicatePattern::Iri(iri)),
                }
            }
        }
    }

    fn term_pattern(&mut self, position: &str) -> PResult<TermPattern> {
        match self.cur.peek() {
            Some('?' | '$') => Ok(TermPattern::Var(self.var()?)),
            Some('[') => Err(self.unsupported("blank node property list")),
            Some('(') => Err(self.unsupported("collection")),
            Some('_') if self.cur.peek_nth(1) == Some(':') => Err(self.unsupported("blank node in pattern")),
            None => Err(self.cur.unexpected(position).into()),
            _ => Ok(TermPattern::Term(self.constant_term()?)),
        }
    }

    fn var(&mut self) -> PResult<Variable> {
        let start = self.cur.pos();
        if !(self.cur.eat('?') || self.cur.eat('$')) {
            return Err(self.cur.unexpected("variable").into());
        }
        let mut name = String::new();
        while let Some(c) = self.cur.peek() {
            if c.is_alphanumeric() || c == '_' || c == '\u{B7}' {
                name.push(c);
                self.cur.bump();
            } else {
                break;
            }
        }
        if name.is_empty() {
            return Err(self.cur.error_at(start, "empty variable name").into());
        }
        Ok(Variable::new(name))
    }

    fn iriref(&mut self) -> PResult<Iri> {
        let start = self.cur.pos();
        let raw = self.cur.read_iriref()?;
        let resolved = resolve_iri(self.base.as_deref(), &raw)
            .ok_or_else(|| self.cur.error_at(start, format!("relative IRI <{raw}> without a base")))?;
        Iri::new(resolved).map_err(|e| self.cur.error_at(start, e.to_string()).into())
    }

    fn iri(&mut self) -> PResult<Iri> {
        if self.cur.peek() == Some('<') {
            return self.iriref();
        }
        let start = self.cur.pos();
        let Some(label) = self.cur.read_pname_prefix() else {
            return Err(self.cur.unexpected("IRI").into());
        };
        let local = self.cur.read_pname_local()?;
        match self.prefixes.expand(&label, &local) {
            None => Err(self.cur.error_at(start, format!("undeclared prefix '{label}:'")).into()),
            Some(Err(e)) => Err(self.cur.error_at(start, e.to_string()).into()),
            Some(Ok(iri)) => Ok(iri),
        }
    }

    fn constant_term(&mut self) -> PResult<Term> {
        match self.cur.peek() {
            Some('"' | '\'') => self.literal(),
            _ if self.cur.at_number_start() => {
                let (lex, dt) = self.cur.read_number()?.into_parts();
                Ok(Literal::typed(lex, Iri::new_unchecked(dt))
                    .expect("numeric datatype")
                    .into())
            }
            _ if self.cur.peek_keyword("true") || self.cur.peek_keyword("false") => {
                let v = if self.cur.eat_keyword("true") {
                    "true"
                } else {
                    self.cur.eat_keyword("false");
                    "false"
                };
                Ok(Literal::typed(v, Iri::new_unchecked(xsd::BOOLEAN))
                    .expect("boolean datatype")
                    .into())
            }
            _ => Ok(Term::Iri(self.iri()?)),
        }
    }

    fn literal(&mut self) -> PResult<Term> {
        let start = self.cur.pos();
        let lexical = self.cur.read_string()?;
        if self.cur.peek() == Some('@') {
            let tag = self.cur.read_lang_tag()?;
            return Literal::lang(lexical, &tag)
                .map(Term::from)
                .map_err(|e| self.cur.error_at(start, e.to_string()).into());
        }
        if self.cur.eat_str("^^") {
            let dt = self.iri()?;
            return Literal::typed(lexical, dt)
                .map(Term::from)
                .map_err(|e| self.cur.error_at(start, e.to_string()).into());
        }
        Ok(Literal::simple(lexical).into())
    }

    /// `FILTER` argument: a bracketed expression or a bare built-in call.
    fn constraint(&mut self) -> PResult<Expr> {
        if self.cur.eat('(') {
            let e = self.expr()?;
            self.ws();
            self.cur.expect(')')?;
            Ok(e)
        } else {
            self.builtin_call()
        }
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut left = self.and_expr()?;
        loop {
            self.ws();
            if self.cur.eat_str("||") {
                let right = self.and_expr()?;
                left = Expr::Or(Box::new(left), Box::new(right));
            } else {
                return Ok(left);
            }
        }
    }

    fn and_expr(&mut self) -> PResult<Expr> {
        let mut left = self.relational()?;
        loop {
            self.ws();
            if self.cur.eat_str("&&") {
                let right = self.relational()?;
                left = Expr::And(Box::new(left), Box::new(right));
            } else {
                return Ok(left);
            }
        }
    }

    fn relational(&mut self) -> PResult<Expr> {
        let left = self.unary()?;
        self.ws();
        if self.cur.eat_str("!=") {
            let right = self.unary()?;
            return Ok(Expr::NotEquals(Box::new(left), Box::new(right)));
        }
        if self.cur.eat('=') {
            let right = self.unary()?;
            return Ok(Expr::Equals(Box::new(left), Box::new(right)));
        }
        if matches!(self.cur.peek(), Some('<' | '>')) {
            return Err(self.unsupported("ordering comparison"));
        }
        if matches!(self.cur.peek(), Some('+' | '-' | '*' | '/')) {
            return Err(self.unsupported("arithmetic"));
        }
        if self.cur.peek_keyword("NOT") {
            let save = self.cur.pos();
            self.cur.eat_keyword("NOT");
            self.ws();
            if self.cur.eat_keyword("IN") {
                let list = self.expr_list()?;
                return Ok(Expr::NotIn(Box::new(left), list));
            }
            return Err(self.cur.error_at(save, "expected NOT IN").into());
        }
        if self.cur.eat_keyword("IN") {
            let list = self.expr_list()?;
            return Ok(Expr::In(Box::new(left), list));
        }
        Ok(left)
    }

    fn expr_list(&mut self) -> PResult<Vec<Expr>> {
        self.ws();
        self.cur.expect('(')?;
        let mut out = Vec::new();
        self.ws();
        if self.cur.eat(')') {
            return Ok(out);
        }
        loop {
            out.push(self.expr()?);
            self.ws();
            if self.cur.eat(')') {
                return Ok(out);
            }
            self.cur.expect(',')?;
        }
    }

    fn unary(&mut self) -> PResult<Expr> {
        self.ws();
        if self.cur.peek() == Some('!') && self.cur.peek_nth(1) != Some('=') {
            self.cur.bump();
            let inner = self.unary()?;
            return Ok(Expr::Not(Box::new(inner)));
        }
        self.primary()
    }

    fn primary(&mut self) -> PResult<Expr> {
        self.ws();
        match self.cur.peek() {
            Some('(') => {
                self.cur.bump();
                let e = self.expr()?;
                self.ws();
                self.cur.expect(')')?;
                Ok(e)
            }
            Some('?' | '$') => Ok(Expr::Var(self.var()?)),
            Some('"' | '\'' | '<') => Ok(Expr::Constant(self.constant_term()?)),
            Some('-' | '+') if !self.cur.at_number_start() => Err(self.unsupported("arithmetic")),
            _ if self.cur.at_number_start() => Ok(Expr::Constant(self.constant_term()?)),
            _ if self.cur.peek_keyword("true") || self.cur.peek_keyword("false") => {
                Ok(Expr::Constant(self.constant_term()?))
            }
            _ => {
                // a prefixed name is a constant; a bare word is a function call
                let save = self.cur.pos();
                if self.cur.read_pname_prefix().is_some() {
                    self.cur.set_pos(save);
                    return Ok(Expr::Constant(self.constant_term()?));
                }
                self.builtin_call()
            }
        }
    }

    fn builtin_call(&mut self) -> PResult<Expr> {
        self.ws();
        if self.cur.eat_keyword("NOT") {
            self.ws();
            if self.cur.eat_keyword("EXISTS") {
                let g = self.group()?;
                return Ok(Expr::NotExists(Box::new(g)));
            }
            return Err(self.cur.unexpected("EXISTS").into());
        }
        if self.cur.eat_keyword("EXISTS") {
            let g = self.group()?;
            return Ok(Expr::Exists(Box::new(g)));
        }
        if self.cur.eat_keyword("BOUND") {
            self.ws();
            self.cur.expect('(')?;
            self.ws();
            let v = self.var()?;
            self.ws();
            self.cur.expect(')')?;
            return Ok(Expr::Bound(v));
        }
        let unary: [(&str, UnaryBuilder); 5] = [
            ("STR", Expr::Str),
            ("ISIRI", Expr::IsIri),
            ("ISURI", Expr::IsIri),
            ("ISLITERAL", Expr::IsLiteral),
            ("ISBLANK", Expr::IsBlank),
        ];
        for (name, build) in unary {
            if self.cur.eat_keyword(name) {
                let mut args = self.expr_list()?;
                if args.len() != 1 {
                    return Err(self.cur.error(format!("{name} takes one argument")).into());
                }
                return Ok(build(Box::new(args.remove(0))));
            }
        }
        if self.cur.eat_keyword("STRSTARTS") {
            let mut args = self.expr_list()?;
            if args.len() != 2 {
                return Err(self.cur.error("STRSTARTS takes two arguments").into());
            }
            let b = args.pop().unwrap();
            let a = args.pop().unwrap();
            return Ok(Expr::StrStarts(Box::new(a), Box::new(b)));
        }
        let start = self.cur.pos();
        let mut name = String::new();
        while let Some(c) = self.cur.peek().filter(|c| c.is_alphanumeric() || *c == '_') {
            name.push(c);
            self.cur.bump();
        }
        if name.is_empty() {
            return Err(self.cur.unexpected("expression").into());
        }
        self.cur.set_pos(start);
        Err(self.unsupported(&name.to_ascii_uppercase()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_pattern_query() {
        let q = parse_query("SELECT ?s ?p ?o\nWHERE {\n  GRAPH <http://x/g> { ?s ?p ?o }\n}").unwrap();
        let GraphPattern::Group(items) = &q.where_clause else {
            panic!()
        };
        assert_eq!(items.len(), 1);
        assert!(
            matches!(&items[0], GraphPattern::Graph { name: GraphTarget::Iri(i), .. } if i.as_str() == "http://x/g")
        );
    }

    #[test]
    fn star_and_limit() {
        let q = parse_query("SELECT * WHERE { ?s ?p ?o } LIMIT 100").unwrap();
        assert!(matches!(
            q.form,
            QueryForm::Select {
                projection: Projection::Star,
                ..
            }
        ));
        assert_eq!(q.modifiers.limit, Some(100));
    }

    #[test]
    fn values_with_two_iris() {
        let q = parse_query(
            "SELECT ?r WHERE { ?p <http://x/hasRole> ?r . VALUES ?r { <http://x/a> <http://x/b> } } ORDER BY ?r",
        )
        .unwrap();
        let GraphPattern::Group(items) = &q.where_clause else {
            panic!()
        };
        assert!(matches!(&items[1], GraphPattern::Values { terms, .. } if terms.len() == 2));
        assert_eq!(q.modifiers.order_by.len(), 1);
    }

    #[test]
    fn path_and_optional() {
        let q =
            parse_query("select * where { ?u <http://x/s> <http://x/p> . OPTIONAL{?c <http://x/a>+ ?u .} } limit 100")
                .unwrap();
        let GraphPattern::Group(items) = &q.where_clause else {
            panic!()
        };
        let GraphPattern::Optional(inner) = &items[1] else {
            panic!()
        };
        let GraphPattern::Group(inner) = inner.as_ref() else {
            panic!()
        };
        let GraphPattern::Bgp(t) = &inner[0] else { panic!() };
        assert!(matches!(t[0].predicate, PredicatePattern::OneOrMore(_)));
    }

    #[test]
    fn filters() {
        let q = parse_query(
            "PREFIX ex: <http://x/> SELECT * WHERE { ?a ?p ?b . FILTER(?p NOT IN (ex:l, ex:m)) . \
             FILTER NOT EXISTS { ?a ex:q ?c } FILTER(!isIRI(?b) && STRSTARTS(STR(?b), \"http\")) }",
        )
        .unwrap();
        let GraphPattern::Group(items) = &q.where_clause else {
            panic!()
        };
        assert!(matches!(&items[1], GraphPattern::Filter(Expr::NotIn(_, l)) if l.len() == 2));
        assert!(matches!(&items[2], GraphPattern::Filter(Expr::NotExists(_))));
        assert!(matches!(&items[3], GraphPattern::Filter(Expr::And(_, _))));
    }

    #[test]
    fn keywords_are_case_insensitive_variables_are_not() {
        let q = parse_query("select DISTINCT ?A ?a where { ?A ?a ?b }").unwrap();
        let QueryForm::Select {
            distinct,
            projection: Projection::Variables(v),
        } = q.form
        else {
            panic!()
        };
        assert!(distinct);
        assert_ne!(v[0], v[1]);
    }

    #[test]
    fn dollar_variables() {
        let q = parse_query("SELECT $this WHERE { $this <http://x/p> ?o }").unwrap();
        assert!(
            matches!(q.form, QueryForm::Select { projection: Projection::Variables(v), .. } if v[0].name() == "this")
        );
    }

    #[test]
    fn construct_template() {
        let q = parse_query("CONSTRUCT { ?s ?p ?o } WHERE { GRAPH <http://x/g> { ?s ?p ?o } } LIMIT 100").unwrap();
        assert!(q.is_construct());
        assert_eq!(q.modifiers.limit, Some(100));
    }

    fn unsupported(text: &str) -> String {
        match parse_query(text) {
            Err(QueryError::Unsupported { feature, .. }) => feature,
            other => panic!("expected Unsupported for {text}: {other:?}"),
        }
    }

    #[test]
    fn unsupported_features_are_named() {
        assert_eq!(
            unsupported("SELECT * WHERE { { ?s ?p ?o } UNION { ?s ?p ?o } }"),
            "UNION"
        );
        assert_eq!(unsupported("SELECT * WHERE { ?s ?p ?o MINUS { ?s ?p ?o } }"), "MINUS");
        assert_eq!(unsupported("SELECT * WHERE { ?s ?p ?o . BIND(1 AS ?x) }"), "BIND");
        assert_eq!(
            unsupported("SELECT (COUNT(?s) AS ?n) WHERE { ?s ?p ?o }"),
            "SELECT expression"
        );
        assert_eq!(unsupported("ASK { ?s ?p ?o }"), "ASK");
        assert_eq!(unsupported("SELECT * WHERE { ?s ?p ?o } GROUP BY ?s"), "GROUP");
        assert_eq!(
            unsupported("SELECT * WHERE { ?s <http://x/p>/<http://x/q> ?o }"),
            "sequence path"
        );
        assert_eq!(unsupported("SELECT * WHERE { ?s <http://x/p>* ?o }"), "path '*'");
        assert_eq!(
            unsupported("SELECT * WHERE { ?s ?p ?o FILTER regex(?o, \"a\") }"),
            "REGEX"
        );
        assert_eq!(
            unsupported("INSERT DATA { <http://a> <http://b> <http://c> }"),
            "UPDATE"
        );
        assert_eq!(
            unsupported("SELECT * WHERE { GRAPH ?g { GRAPH ?h { ?s ?p ?o } } }"),
            "nested GRAPH"
        );
    }

    #[test]
    fn unsupported_reports_position() {
        match parse_query("SELECT *\nWHERE { ?s ?p ?o .\n  BIND(1 AS ?x) }") {
            Err(QueryError::Unsupported { line, column, .. }) => assert_eq!((line, column), (3, 3)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn parse_errors_have_positions() {
        match parse_query("SELECT ?s WHERE { ?s ?p }") {
            Err(QueryError::Parse(e)) => assert_eq!((e.line, e.column), (1, 25)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_query("SELECT ?s WHERE { ?s ex:p ?o }"),
            Err(QueryError::Parse(_))
        ));
    }
}
