use std::collections::{BTreeSet, HashMap};
use std::ops::Bound;

use super::term::{GraphName, Iri, Quad, Subject, Term};

type Key = [u32; 4];

/// The four index orderings kept by a [`Dataset`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexOrder {
    Gspo,
    Spog,
    Posg,
    Ospg,
}

impl IndexOrder {
    pub const ALL: [IndexOrder; 4] = [IndexOrder::Gspo, IndexOrder::Spog, IndexOrder::Posg, IndexOrder::Ospg];

    /// Positions (0 = g, 1 = s, 2 = p, 3 = o) in key order.
    fn layout(self) -> [usize; 4] {
        match self {
            IndexOrder::Gspo => [0, 1, 2, 3],
            IndexOrder::Spog => [1, 2, 3, 0],
            IndexOrder::Posg => [2, 3, 1, 0],
            IndexOrder::Ospg => [3, 1, 2, 0],
        }
    }

    fn encode(self, gspo: Key) -> Key {
        let l = self.layout();
        [gspo[l[0]], gspo[l[1]], gspo[l[2]], gspo[l[3]]]
    }

    fn decode(self, key: Key) -> Key {
        let l = self.layout();
        let mut out = [0; 4];
        for (i, pos) in l.iter().enumerate() {
            out[*pos] = key[i];
        }
        out
    }

    /// Number of leading key positions fixed by the bound mask.
    fn prefix_len(self, bound: [bool; 4]) -> usize {
        self.layout().iter().take_while(|pos| bound[**pos]).count()
    }
}

/// An in-memory quad store with set semantics and four consistent indexes.
///
/// Terms are interned; graph codes use 0 for the default graph and
/// `term id + 1` for named graphs.
#[derive(Debug, Clone, Default)]
pub struct Dataset {
    terms: Vec<Term>,
    ids: HashMap<Term, u32>,
    gspo: BTreeSet<Key>,
    spog: BTreeSet<Key>,
    posg: BTreeSet<Key>,
    ospg: BTreeSet<Key>,
}

const DEFAULT_GRAPH: u32 = 0;

impl Dataset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.gspo.len()
    }

    /// Alias of [`Dataset::len`].
    pub fn count(&self) -> usize {
        self.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gspo.is_empty()
    }

    fn intern(&mut self, term: Term) -> u32 {
        if let Some(id) = self.ids.get(&term) {
            return *id;
        }
        let id = u32::try_from(self.terms.len()).expect("term table overflow");
        self.terms.push(term.clone());
        self.ids.insert(term, id);
        id
    }

    fn lookup(&self, term: &Term) -> Option<u32> {
        self.ids.get(term).copied()
    }

    fn graph_code(&self, graph: &GraphName) -> Option<u32> {
        match graph {
            GraphName::Default => Some(DEFAULT_GRAPH),
            GraphName::Named(iri) => self.lookup(&Term::Iri(iri.clone())).map(|id| id + 1),
        }
    }

    fn encode(&self, quad: &Quad) -> Option<Key> {
        Some([
            self.graph_code(&quad.graph)?,
            self.lookup(&quad.subject.clone().into())?,
            self.lookup(&Term::Iri(quad.predicate.clone()))?,
            self.lookup(&quad.object)?,
        ])
    }

    fn index(&self, order: IndexOrder) -> &BTreeSet<Key> {
        match order {
            IndexOrder::Gspo => &self.gspo,
            IndexOrder::Spog => &self.spog,
            IndexOrder::Posg => &self.posg,
            IndexOrder::Ospg => &self.ospg,
        }
    }

    /// Inserts a quad. Returns `false` if it was already present.
    pub fn insert(&mut self, quad: Quad) -> bool {
        let g = match quad.graph {
            GraphName::Default => DEFAULT_GRAPH,
            GraphName::Named(iri) => self.intern(Term::Iri(iri)) + 1,
        };
        let s = self.intern(quad.subject.into());
        let p = self.intern(Term::Iri(quad.predicate));
        let o = self.intern(quad.object);
        let key = [g, s, p, o];
        if !self.gspo.insert(key) {
            return false;
        }
        self.spog.insert(IndexOrder::Spog.encode(key));
        self.posg.insert(IndexOrder::Posg.encode(key));
        self.ospg.insert(IndexOrder::Ospg.encode(key));
        true
    }

    /// Removes a quad. Returns `false` if it was absent.
    pub fn remove(&mut self, quad: &Quad) -> bool {
        let Some(key) = self.encode(quad) else {
            return false;
        };
        if !self.gspo.remove(&key) {
            return false;
        }
        self.spog.remove(&IndexOrder::Spog.encode(key));
        self.posg.remove(&IndexOrder::Posg.encode(key));
        self.ospg.remove(&IndexOrder::Ospg.encode(key));
        true
    }

    pub fn contains(&self, quad: &Quad) -> bool {
        self.encode(quad).is_some_and(|k| self.gspo.contains(&k))
    }

    pub fn extend<I: IntoIterator<Item = Quad>>(&mut self, quads: I) {
        for q in quads {
            self.insert(q);
        }
    }

    /// Removes every quad of a graph and returns how many were removed.
    pub fn remove_graph(&mut self, graph: &GraphName) -> usize {
        let doomed: Vec<Quad> = self.quads_matching(None, None, None, Some(graph)).collect();
        for q in &doomed {
            self.remove(q);
        }
        doomed.len()
    }

    /// Every named graph with at least one quad, plus `Default` if the
    /// default graph is non-empty.
    pub fn graphs(&self) -> BTreeSet<GraphName> {
        let mut out = BTreeSet::new();
        let mut cursor: Option<u32> = None;
        loop {
            let start = match cursor {
                None => Bound::Unbounded,
                Some(g) => Bound::Included([g + 1, 0, 0, 0]),
            };
            let Some(key) = self.gspo.range((start, Bound::Unbounded)).next() else {
                break;
            };
            out.insert(self.decode_graph(key[0]));
            if key[0] == u32::MAX {
                break;
            }
            cursor = Some(key[0]);
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = Quad> + '_ {
        self.gspo.iter().map(move |k| self.decode(*k))
    }

    /// Enumerates the quads through one specific index.
    pub fn iter_index(&self, order: IndexOrder) -> impl Iterator<Item = Quad> + '_ {
        self.index(order).iter().map(move |k| self.decode(order.decode(*k)))
    }

    fn decode_graph(&self, code: u32) -> GraphName {
        if code == DEFAULT_GRAPH {
            GraphName::Default
        } else {
            match &self.terms[(code - 1) as usize] {
                Term::Iri(iri) => GraphName::Named(iri.clone()),
                other => unreachable!("graph name interned as non-IRI {other}"),
            }
        }
    }

    fn decode(&self, key: Key) -> Quad {
        let subject = match &self.terms[key[1] as usize] {
            Term::Iri(i) => Subject::Iri(i.clone()),
            Term::BlankNode(b) => Subject::BlankNode(b.clone()),
            Term::Literal(_) => unreachable!("literal interned as subject"),
        };
        let predicate = match &self.terms[key[2] as usize] {
            Term::Iri(i) => i.clone(),
            _ => unreachable!("non-IRI interned as predicate"),
        };
        Quad {
            subject,
            predicate,
            object: self.terms[key[3] as usize].clone(),
            graph: self.decode_graph(key[0]),
        }
    }

    /// Quads matching every bound position; `None` is a wildcard.
    ///
    /// A subject or predicate bound to a term that can never occupy that
    /// position simply matches nothing.
    pub fn quads_matching<'a>(
        &'a self,
        subject: Option<&Term>,
        predicate: Option<&Iri>,
        object: Option<&Term>,
        graph: Option<&GraphName>,
    ) -> Box<dyn Iterator<Item = Quad> + 'a> {
        let mut pattern = [0u32; 4];
        let mut bound = [false; 4];
        let lookups = [
            graph.map(|g| self.graph_code(g)),
            subject.map(|s| if s.is_literal() { None } else { self.lookup(s) }),
            predicate.map(|p| self.lookup(&Term::Iri(p.clone()))),
            object.map(|o| self.lookup(o)),
        ];
        for (i, l) in lookups.into_iter().enumerate() {
            match l {
                None => {}
                Some(None) => return Box::new(std::iter::empty()),
                Some(Some(id)) => {
                    pattern[i] = id;
                    bound[i] = true;
                }
            }
        }
        Box::new(self.match_keys(pattern, bound).map(move |k| self.decode(k)))
    }

    /// Picks the index whose key prefix covers the most bound positions.
    pub fn best_index(bound: [bool; 4]) -> IndexOrder {
        let mut best = IndexOrder::Gspo;
        let mut best_len = best.prefix_len(bound);
        for order in IndexOrder::ALL.into_iter().skip(1) {
            let len = order.prefix_len(bound);
            if len > best_len {
                best = order;
                best_len = len;
            }
        }
        best
    }

    fn match_keys(&self, pattern: Key, bound: [bool; 4]) -> impl Iterator<Item = Key> + '_ {
        let order = Self::best_index(bound);
        let prefix = order.prefix_len(bound);
        let encoded = order.encode(pattern);
        let mut lo = [0u32; 4];
        let mut hi = [u32::MAX; 4];
        lo[..prefix].copy_from_slice(&encoded[..prefix]);
        hi[..prefix].copy_from_slice(&encoded[..prefix]);
        self.index(order)
            .range(lo..=hi)
            .map(move |k| order.decode(*k))
            .filter(move |k| (0..4).all(|i| !bound[i] || k[i] == pattern[i]))
    }
}

impl FromIterator<Quad> for Dataset {
    fn from_iter<T: IntoIterator<Item = Quad>>(iter: T) -> Self {
        let mut d = Dataset::new();
        d.extend(iter);
        d
    }
}

impl PartialEq for Dataset {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.iter().all(|q| other.contains(&q))
    }
}

impl Eq for Dataset {}
