use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use super::cursor::{resolve_iri, Cursor};
use super::{ParseError, PrefixTable, SyntaxError};
use crate::rdf::vocab::{rdf, xsd};
use crate::rdf::{BlankNode, Dataset, GraphName, Iri, Literal, Quad, Subject, Term};

static BLANK_COUNTER: AtomicU64 = AtomicU64::new(0);

/// A process-unique blank node, so separately parsed documents never share one.
pub(crate) fn fresh_blank_node() -> BlankNode {
    let n = BLANK_COUNTER.fetch_add(1, Ordering::Relaxed);
    BlankNode::new(format!("b{n}")).expect("generated label is valid")
}

/// Parses a Turtle document; every triple lands in the default graph.
pub fn parse_turtle(text: &str) -> Result<(Dataset, PrefixTable), SyntaxError> {
    parse_turtle_with_base(text, None)
}

pub fn parse_turtle_with_base(text: &str, base: Option<&str>) -> Result<(Dataset, PrefixTable), SyntaxError> {
    let mut parser = Parser::new(text, base, false);
    let mut out = Dataset::new();
    parser.document(&mut out)?;
    Ok((out, parser.prefixes))
}

/// Parses a TriG document. Graph blocks route their triples to the named graph.
pub fn parse_trig(text: &str) -> Result<(Dataset, PrefixTable), SyntaxError> {
    parse_trig_with_base(text, None)
}

pub fn parse_trig_with_base(text: &str, base: Option<&str>) -> Result<(Dataset, PrefixTable), SyntaxError> {
    let mut parser = Parser::new(text, base, true);
    let mut out = Dataset::new();
    parser.document(&mut out)?;
    Ok((out, parser.prefixes))
}

struct Parser<'a> {
    src: &'a str,
    cur: Cursor<'a>,
    base: Option<String>,
    prefixes: PrefixTable,
    trig: bool,
    graph: GraphName,
    in_block: bool,
    bnodes: HashMap<String, BlankNode>,
}

type PResult<T> = Result<T, SyntaxError>;

impl<'a> Parser<'a> {
    fn new(text: &'a str, base: Option<&str>, trig: bool) -> Self {
        Self {
            src: text,
            cur: Cursor::new(text),
            base: base.map(str::to_string),
            prefixes: PrefixTable::new(),
            trig,
            graph: GraphName::Default,
            in_block: false,
            bnodes: HashMap::new(),
        }
    }

    fn err(&self, msg: impl Into<String>) -> SyntaxError {
        SyntaxError::Parse(self.cur.error(msg))
    }

    fn document(&mut self, out: &mut Dataset) -> PResult<()> {
        loop {
            self.cur.skip_ws();
            if self.cur.at_end() {
                return Ok(());
            }
            self.statement(out)?;
        }
    }

    fn statement(&mut self, out: &mut Dataset) -> PResult<()> {
        if self.directive()? {
            return Ok(());
        }
        if self.trig {
            if self.cur.peek_keyword("GRAPH") {
                let at = self.cur.pos();
                self.cur.eat_keyword("GRAPH");
                if self.in_block {
                    return Err(SyntaxError::NestedGraph(
                        self.cur.error_at(at, "GRAPH inside a graph block"),
                    ));
                }
                self.cur.skip_ws();
                let name = self.graph_label()?;
                self.cur.skip_ws();
                return self.graph_block(GraphName::Named(name), out);
            }
            if self.cur.peek() == Some('{') {
                if self.in_block {
                    return Err(SyntaxError::NestedGraph(self.cur.error("'{' inside a graph block")));
                }
                return self.graph_block(GraphName::Default, out);
            }
        }
        let subject_pos = self.cur.pos();
        match self.cur.peek() {
            Some('[') => {
                let node = self.blank_property_list(out)?;
                self.cur.skip_ws();
                if !matches!(self.cur.peek(), Some('.') | Some('}') | None) {
                    self.predicate_object_list(&node, out)?;
                }
            }
            Some('(') => {
                let node = self.collection(out)?;
                let subject = self.as_subject(node, subject_pos)?;
                self.cur.skip_ws();
                self.predicate_object_list(&subject, out)?;
            }
            _ => {
                let term = self.subject_term()?;
                self.cur.skip_ws();
                if self.trig && self.cur.peek() == Some('{') {
                    let Term::Iri(name) = term else {
                        return Err(SyntaxError::Parse(
                            self.cur.error_at(subject_pos, "graph names must be IRIs"),
                        ));
                    };
                    if self.in_block {
                        return Err(SyntaxError::NestedGraph(
                            self.cur.error_at(subject_pos, "graph block inside a graph block"),
                        ));
                    }
                    return self.graph_block(GraphName::Named(name), out);
                }
                let subject = self.as_subject(term, subject_pos)?;
                self.predicate_object_list(&subject, out)?;
            }
        }
        self.cur.skip_ws();
        if self.in_block && self.cur.peek() == Some('}') {
            return Ok(());
        }
        if !self.cur.eat('.') {
            return Err(SyntaxError::Parse(self.cur.unexpected("'.'")));
        }
        Ok(())
    }

    fn as_subject(&self, term: Term, pos: usize) -> PResult<Subject> {
        Subject::try_from(term).map_err(|_| SyntaxError::Parse(self.cur.error_at(pos, "literal in subject position")))
    }

    fn graph_block(&mut self, name: GraphName, out: &mut Dataset) -> PResult<()> {
        let open = self.cur.pos();
        self.cur.expect('{').map_err(SyntaxError::Parse)?;
        let saved = std::mem::replace(&mut self.graph, name);
        self.in_block = true;
        loop {
            self.cur.skip_ws();
            if self.cur.eat('}') {
                break;
            }
            if self.cur.at_end() {
                let opened = ParseError::at(self.src, open, "");
                return Err(SyntaxError::Parse(self.cur.error(format!(
                    "unclosed graph block opened at line {}, column {}",
                    opened.line, opened.column
                ))));
            }
            if self.cur.peek_keyword("PREFIX") || self.cur.peek_keyword("BASE") || self.cur.peek() == Some('@') {
                return Err(self.err("directives are not allowed inside graph blocks"));
            }
            self.statement(out)?;
        }
        self.graph = saved;
        self.in_block = false;
        Ok(())
    }

    fn directive(&mut self) -> PResult<bool> {
        let sparql_style = if self.cur.eat_str("@prefix") {
            Some((true, false))
        } else if self.cur.eat_str("@base") {
            Some((false, false))
        } else if self.cur.eat_keyword("PREFIX") {
            Some((true, true))
        } else if self.cur.eat_keyword("BASE") {
            Some((false, true))
        } else {
            None
        };
        let Some((is_prefix, sparql)) = sparql_style else {
            return Ok(false);
        };
        if self.in_block {
            return Err(self.err("directives are not allowed inside graph blocks"));
        }
        self.cur.skip_ws();
        if is_prefix {
            let label = self
                .cur
                .read_pname_prefix()
                .ok_or_else(|| SyntaxError::Parse(self.cur.unexpected("prefix label followed by ':'")))?;
            self.cur.skip_ws();
            let iri = self.iriref()?;
            self.prefixes.insert(label, iri);
        } else {
            let iri = self.iriref()?;
            self.base = Some(iri.into_string());
        }
        if !sparql {
            self.cur.skip_ws();
            if !self.cur.eat('.') {
                return Err(SyntaxError::Parse(self.cur.unexpected("'.' after directive")));
            }
        }
        Ok(true)
    }

    fn iriref(&mut self) -> PResult<Iri> {
        let at = self.cur.pos();
        let raw = self.cur.read_iriref().map_err(SyntaxError::Parse)?;
        let resolved = resolve_iri(self.base.as_deref(), &raw)
            .ok_or_else(|| SyntaxError::Parse(self.cur.error_at(at, format!("relative IRI <{raw}> without a base"))))?;
        Iri::new(resolved).map_err(|e| SyntaxError::Parse(self.cur.error_at(at, e.to_string())))
    }

    fn prefixed_name(&mut self) -> PResult<Option<Iri>> {
        let at = self.cur.pos();
        let Some(label) = self.cur.read_pname_prefix() else {
            return Ok(None);
        };
        let local = self.cur.read_pname_local().map_err(SyntaxError::Parse)?;
        match self.prefixes.expand(&label, &local) {
            None => Err(SyntaxError::Parse(
                self.cur.error_at(at, format!("undeclared prefix '{label}:'")),
            )),
            Some(Err(e)) => Err(SyntaxError::Parse(self.cur.error_at(at, e.to_string()))),
            Some(Ok(iri)) => Ok(Some(iri)),
        }
    }

    fn iri(&mut self) -> PResult<Iri> {
        if self.cur.peek() == Some('<') {
            return self.iriref();
        }
        match self.prefixed_name()? {
            Some(iri) => Ok(iri),
            None => Err(SyntaxError::Parse(self.cur.unexpected("IRI"))),
        }
    }

    fn graph_label(&mut self) -> PResult<Iri> {
        self.iri()
    }

    fn labeled_bnode(&mut self) -> PResult<BlankNode> {
        let label = self.cur.read_bnode_label().map_err(SyntaxError::Parse)?;
        Ok(self.bnodes.entry(label).or_insert_with(fresh_blank_node).clone())
    }

    fn subject_term(&mut self) -> PResult<Term> {
        match self.cur.peek() {
            Some('_') if self.cur.rest().starts_with("_:") => Ok(Term::BlankNode(self.labeled_bnode()?)),
            Some('<') => Ok(Term::Iri(self.iriref()?)),
            Some(c) if c.is_alphabetic() || c == ':' => match self.prefixed_name()? {
                Some(iri) => Ok(Term::Iri(iri)),
                None => Err(self.err("expected subject")),
            },
            _ => Err(SyntaxError::Parse(self.cur.unexpected("subject"))),
        }
    }

    fn predicate_object_list(&mut self, subject: &Subject, out: &mut Dataset) -> PResult<()> {
        loop {
            self.cur.skip_ws();
            let predicate = self.verb()?;
            self.object_list(subject, &predicate, out)?;
            self.cur.skip_ws();
            if !self.cur.eat(';') {
                return Ok(());
            }
            // tolerate repeated and trailing semicolons
            loop {
                self.cur.skip_ws();
                if !self.cur.eat(';') {
                    break;
                }
            }
            if matches!(self.cur.peek(), Some('.') | Some(']') | Some('}') | None) {
                return Ok(());
            }
        }
    }

    fn verb(&mut self) -> PResult<Iri> {
        if self.cur.peek() == Some('a')
            && !matches!(self.cur.peek_nth(1), Some(c) if super::cursor::is_name_char(c) || c == ':')
        {
            self.cur.bump();
            return Ok(Iri::new_unchecked(rdf::TYPE));
        }
        match self.cur.peek() {
            Some('<') => self.iriref(),
            Some(c) if c.is_alphabetic() || c == ':' => self
                .prefixed_name()?
                .ok_or_else(|| SyntaxError::Parse(self.cur.unexpected("predicate"))),
            _ => Err(SyntaxError::Parse(self.cur.unexpected("predicate"))),
        }
    }

    fn object_list(&mut self, subject: &Subject, predicate: &Iri, out: &mut Dataset) -> PResult<()> {
        loop {
            self.cur.skip_ws();
            let object = self.object(out)?;
            out.insert(Quad::new(
                subject.clone(),
                predicate.clone(),
                object,
                self.graph.clone(),
            ));
            self.cur.skip_ws();
            if !self.cur.eat(',') {
                return Ok(());
            }
        }
    }

    fn object(&mut self, out: &mut Dataset) -> PResult<Term> {
        match self.cur.peek() {
            Some('[') => Ok(self.blank_property_list(out)?.into()),
            Some('(') => self.collection(out),
            Some('"' | '\'') => self.literal(),
            Some('_') if self.cur.rest().starts_with("_:") => Ok(Term::BlankNode(self.labeled_bnode()?)),
            Some('<') => Ok(Term::Iri(self.iriref()?)),
            _ if self.cur.at_number_start() => {
                let (lex, dt) = self.cur.read_number().map_err(SyntaxError::Parse)?.into_parts();
                Ok(Term::Literal(
                    Literal::typed(lex, Iri::new_unchecked(dt)).expect("numeric datatype"),
                ))
            }
            _ if self.cur.peek_keyword("true") || self.cur.peek_keyword("false") => {
                let value = if self.cur.eat_keyword("true") {
                    "true"
                } else {
                    self.cur.eat_keyword("false");
                    "false"
                };
                Ok(Term::Literal(
                    Literal::typed(value, Iri::new_unchecked(xsd::BOOLEAN)).expect("boolean datatype"),
                ))
            }
            Some(c) if c.is_alphabetic() || c == ':' => match self.prefixed_name()? {
                Some(iri) => Ok(Term::Iri(iri)),
                None => Err(SyntaxError::Parse(self.cur.unexpected("object"))),
            },
            _ => Err(SyntaxError::Parse(self.cur.unexpected("object"))),
        }
    }

    fn literal(&mut self) -> PResult<Term> {
        let lexical = self.cur.read_string().map_err(SyntaxError::Parse)?;
        if self.cur.peek() == Some('@') {
            let at = self.cur.pos();
            let tag = self.cur.read_lang_tag().map_err(SyntaxError::Parse)?;
            return Literal::lang(lexical, &tag)
                .map(Term::Literal)
                .map_err(|e| SyntaxError::Parse(self.cur.error_at(at, e.to_string())));
        }
        if self.cur.eat_str("^^") {
            let at = self.cur.pos();
            let dt = self.iri()?;
            return Literal::typed(lexical, dt)
                .map(Term::Literal)
                .map_err(|e| SyntaxError::Parse(self.cur.error_at(at, e.to_string())));
        }
        Ok(Term::Literal(Literal::simple(lexical)))
    }

    fn blank_property_list(&mut self, out: &mut Dataset) -> PResult<Subject> {
        self.cur.expect('[').map_err(SyntaxError::Parse)?;
        let node = Subject::BlankNode(fresh_blank_node());
        self.cur.skip_ws();
        if self.cur.eat(']') {
            return Ok(node);
        }
        self.predicate_object_list(&node, out)?;
        self.cur.skip_ws();
        self.cur.expect(']').map_err(SyntaxError::Parse)?;
        Ok(node)
    }

    fn collection(&mut self, out: &mut Dataset) -> PResult<Term> {
        self.cur.expect('(').map_err(SyntaxError::Parse)?;
        let mut items = Vec::new();
        loop {
            self.cur.skip_ws();
            if self.cur.eat(')') {
                break;
            }
            if self.cur.at_end() {
                return Err(SyntaxError::Parse(self.cur.unexpected("')'")));
            }
            items.push(self.object(out)?);
        }
        let mut head = Term::Iri(Iri::new_unchecked(rdf::NIL));
        for item in items.into_iter().rev() {
            let node = fresh_blank_node();
            out.insert(Quad::new(
                node.clone(),
                Iri::new_unchecked(rdf::FIRST),
                item,
                self.graph.clone(),
            ));
            out.insert(Quad::new(
                node.clone(),
                Iri::new_unchecked(rdf::REST),
                head,
                self.graph.clone(),
            ));
            head = Term::BlankNode(node);
        }
        Ok(head)
    }
}

/// Reads an RDF list starting at `head` from the default graph.
pub(crate) fn read_list(data: &Dataset, head: &Term) -> Option<Vec<Term>> {
    let first = Iri::new_unchecked(rdf::FIRST);
    let rest = Iri::new_unchecked(rdf::REST);
    let mut items = Vec::new();
    let mut node = head.clone();
    let mut guard = 0;
    while node.as_iri().map(Iri::as_str) != Some(rdf::NIL) {
        guard += 1;
        if guard > 10_000 {
            return None;
        }
        let item = data
            .quads_matching(Some(&node), Some(&first), None, None)
            .next()?
            .object;
        items.push(item);
        node = data.quads_matching(Some(&node), Some(&rest), None, None).next()?.object;
    }
    Some(items)
}
