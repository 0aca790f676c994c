use std::borrow::Borrow;
use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::shift::alphabet::Alphabet;
use crate::shift::word::{EventuallyPeriodicPoint, Word};
use crate::shift::Caps;

impl Borrow<[usize]> for Word {
    fn borrow(&self) -> &[usize] {
        self.letters()
    }
}

/// A finite shift space given by its (σ-closed) set of points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteShift {
    pub(crate) alphabet: Alphabet,
    pub(crate) points: BTreeSet<EventuallyPeriodicPoint>,
}

impl FiniteShift {
    pub fn new<I>(alphabet: Alphabet, points: I) -> Result<Self>
    where
        I: IntoIterator<Item = EventuallyPeriodicPoint>,
    {
        let points: BTreeSet<_> = points.into_iter().collect();
        if points.is_empty() {
            return Err(Error::EmptyShift);
        }
        for x in &points {
            if x.max_letter() >= alphabet.len() {
                return Err(Error::AlphabetMismatch(format!(
                    "point {x:?} uses a letter outside the alphabet"
                )));
            }
            if !points.contains(&x.shift()) {
                return Err(Error::InvalidPresentation(format!(
                    "point set is not closed under the shift: σ({x:?}) = {:?} is missing",
                    x.shift()
                )));
            }
        }
        Ok(FiniteShift { alphabet, points })
    }

    pub fn points(&self) -> impl Iterator<Item = &EventuallyPeriodicPoint> {
        self.points.iter()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// A shift of finite type given by a finite list of forbidden words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sft {
    pub(crate) alphabet: Alphabet,
    pub(crate) forbidden: BTreeSet<Word>,
    max_len: usize,
}

impl Sft {
    pub fn new<I>(alphabet: Alphabet, forbidden: I) -> Result<Self>
    where
        I: IntoIterator<Item = Word>,
    {
        let forbidden: BTreeSet<Word> = forbidden.into_iter().collect();
        for w in &forbidden {
            if w.is_empty() {
                return Err(Error::InvalidPresentation(
                    "forbidden words must be nonempty".into(),
                ));
            }
            alphabet.check_word(w)?;
        }
        let max_len = forbidden.iter().map(|w| w.len()).max().unwrap_or(0);
        Ok(Sft {
            alphabet,
            forbidden,
            max_len,
        })
    }

    /// `max forbidden length − 1`, or 0 with no forbidden words.
    pub fn memory(&self) -> usize {
        self.max_len.saturating_sub(1)
    }

    pub fn forbidden(&self) -> impl Iterator<Item = &Word> {
        self.forbidden.iter()
    }

    /// No forbidden word occurs as a factor.
    pub fn admissible(&self, w: &[usize]) -> bool {
        (0..w.len()).all(|i| self.admissible_at(w, i))
    }

    /// No forbidden factor starts at position `i`.
    pub(crate) fn admissible_at(&self, w: &[usize], i: usize) -> bool {
        (1..=self.max_len.min(w.len() - i)).all(|l| !self.forbidden.contains(&w[i..i + l]))
    }

    /// No forbidden factor ends at the last position.
    pub(crate) fn admissible_tail(&self, w: &[usize]) -> bool {
        let n = w.len();
        (1..=self.max_len.min(n)).all(|l| !self.forbidden.contains(&w[n - l..]))
    }
}

/// A vertex shift given by a 0/1 adjacency matrix; vertex `i` is the symbol `"i"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SftMatrix {
    pub(crate) adjacency: Vec<Vec<bool>>,
    pub(crate) sft: Sft,
}

impl SftMatrix {
    pub fn new(adjacency: Vec<Vec<bool>>) -> Result<Self> {
        let n = adjacency.len();
        if n == 0 || adjacency.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidPresentation(
                "adjacency matrix must be square and nonempty".into(),
            ));
        }
        let alphabet = Alphabet::numbered(n)?;
        let forbidden = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !adjacency[i][j])
            .map(|(i, j)| Word::from(vec![i, j]));
        let sft = Sft::new(alphabet, forbidden)?;
        Ok(SftMatrix { adjacency, sft })
    }

    pub fn adjacency(&self) -> &[Vec<bool>] {
        &self.adjacency
    }

    pub fn as_sft(&self) -> &Sft {
        &self.sft
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub label: usize,
}

/// A labelled graph; the shift consists of the labels of right-infinite paths.
///
/// Stored trimmed (every state has an incoming and an outgoing edge), with
/// states in input order and edges sorted by `(label, from, to)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SoficGraph {
    pub(crate) states: Vec<String>,
    pub(crate) alphabet: Alphabet,
    pub(crate) edges: Vec<Edge>,
    /// `pred[a][q']` = sources of `a`-edges into `q'`.
    pred: Vec<Vec<Vec<usize>>>,
    /// `succ[a][q]` = targets of `a`-edges out of `q`.
    succ: Vec<Vec<Vec<usize>>>,
}

impl SoficGraph {
    /// Labels are taken from `alphabet`; labels that no longer occur after
    /// trimming are dropped, keeping the remaining order.
    pub fn new(states: Vec<String>, alphabet: &Alphabet, edges: Vec<Edge>) -> Result<Self> {
        let mut seen = HashMap::new();
        for (i, s) in states.iter().enumerate() {
            if seen.insert(s.as_str(), i).is_some() {
                return Err(Error::InvalidPresentation(format!("duplicate state `{s}`")));
            }
        }
        for e in &edges {
            if e.from >= states.len() || e.to >= states.len() || e.label >= alphabet.len() {
                return Err(Error::InvalidPresentation("edge refers to unknown state or label".into()));
            }
        }
        let mut alive = vec![true; states.len()];
        loop {
            let mut has_in = vec![false; states.len()];
            let mut has_out = vec![false; states.len()];
            for e in edges.iter().filter(|e| alive[e.from] && alive[e.to]) {
                has_out[e.from] = true;
                has_in[e.to] = true;
            }
            let mut changed = false;
            for q in 0..states.len() {
                if alive[q] && !(has_in[q] && has_out[q]) {
                    alive[q] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let mut renumber = vec![usize::MAX; states.len()];
        let mut kept_states = Vec::new();
        for (q, name) in states.into_iter().enumerate() {
            if alive[q] {
                renumber[q] = kept_states.len();
                kept_states.push(name);
            }
        }
        if kept_states.is_empty() {
            return Err(Error::EmptyShift);
        }
        let used: BTreeSet<usize> = edges
            .iter()
            .filter(|e| alive[e.from] && alive[e.to])
            .map(|e| e.label)
            .collect();
        let kept_labels: Vec<usize> = used.into_iter().collect();
        let relabel: HashMap<usize, usize> =
            kept_labels.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let new_alphabet = Alphabet::new(kept_labels.iter().map(|&a| alphabet.symbol(a)))?;
        let edge_set: BTreeSet<Edge> = edges
            .iter()
            .filter(|e| alive[e.from] && alive[e.to])
            .map(|e| Edge {
                from: renumber[e.from],
                to: renumber[e.to],
                label: relabel[&e.label],
            })
            .collect();
        let mut edges: Vec<Edge> = edge_set.into_iter().collect();
        edges.sort_by_key(|e| (e.label, e.from, e.to));

        let n = kept_states.len();
        let k = new_alphabet.len();
        let mut pred = vec![vec![Vec::new(); n]; k];
        let mut succ = vec![vec![Vec::new(); n]; k];
        for e in &edges {
            pred[e.label][e.to].push(e.from);
            succ[e.label][e.from].push(e.to);
        }
        Ok(SoficGraph {
            states: kept_states,
            alphabet: new_alphabet,
            edges,
            pred,
            succ,
        })
    }

    /// Builds from named edges `(from, to, label)`; the alphabet is the labels
    /// in order of first appearance.
    pub fn from_named<S: AsRef<str>>(states: &[S], edges: &[(S, S, S)]) -> Result<Self> {
        let states: Vec<String> = states.iter().map(|s| s.as_ref().to_string()).collect();
        let index: HashMap<&str, usize> =
            states.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let mut labels: Vec<String> = Vec::new();
        for (_, _, l) in edges {
            if !labels.iter().any(|x| x == l.as_ref()) {
                labels.push(l.as_ref().to_string());
            }
        }
        if labels.is_empty() {
            return Err(Error::EmptyShift);
        }
        let alphabet = Alphabet::new(labels)?;
        let state = |s: &S| {
            index
                .get(s.as_ref())
                .copied()
                .ok_or_else(|| Error::InvalidPresentation(format!("unknown state `{}`", s.as_ref())))
        };
        let edges = edges
            .iter()
            .map(|(f, t, l)| {
                Ok(Edge {
                    from: state(f)?,
                    to: state(t)?,
                    label: alphabet.index_of(l.as_ref()).expect("label collected above"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        SoficGraph::new(states, &alphabet, edges)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub(crate) fn pred(&self, a: usize, q: usize) -> &[usize] {
        &self.pred[a][q]
    }

    pub(crate) fn succ(&self, a: usize, q: usize) -> &[usize] {
        &self.succ[a][q]
    }
}

/// The computable stand-in for a one-sided shift space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShiftPresentation {
    Finite(FiniteShift),
    Sft(Sft),
    SftMatrix(SftMatrix),
    Sofic(SoficGraph),
}

impl ShiftPresentation {
    pub fn finite<I>(alphabet: Alphabet, points: I) -> Result<Self>
    where
        I: IntoIterator<Item = EventuallyPeriodicPoint>,
    {
        Ok(ShiftPresentation::Finite(FiniteShift::new(alphabet, points)?))
    }

    pub fn sft<I>(alphabet: Alphabet, forbidden: I) -> Result<Self>
    where
        I: IntoIterator<Item = Word>,
    {
        ShiftPresentation::Sft(Sft::new(alphabet, forbidden)?).nonempty()
    }

    pub fn sft_matrix(adjacency: Vec<Vec<bool>>) -> Result<Self> {
        ShiftPresentation::SftMatrix(SftMatrix::new(adjacency)?).nonempty()
    }

    pub fn sofic(graph: SoficGraph) -> Self {
        ShiftPresentation::Sofic(graph)
    }

    /// Full shift on `n` symbols named `"0"`..`"n-1"`.
    pub fn full_shift(n: usize) -> Result<Self> {
        Self::sft(Alphabet::numbered(n)?, std::iter::empty())
    }

    fn nonempty(self) -> Result<Self> {
        if self.realizable_contexts(&Caps::default())?.is_empty() {
            Err(Error::EmptyShift)
        } else {
            Ok(self)
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        match self {
            ShiftPresentation::Finite(f) => &f.alphabet,
            ShiftPresentation::Sft(s) => &s.alphabet,
            ShiftPresentation::SftMatrix(m) => &m.sft.alphabet,
            ShiftPresentation::Sofic(g) => &g.alphabet,
        }
    }

    /// The forbidden-word view of an SFT or vertex shift.
    pub fn as_sft(&self) -> Option<&Sft> {
        match self {
            ShiftPresentation::Sft(s) => Some(s),
            ShiftPresentation::SftMatrix(m) => Some(&m.sft),
            _ => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ShiftPresentation::Finite(_) => "finite",
            ShiftPresentation::Sft(_) => "sft",
            ShiftPresentation::SftMatrix(_) => "sft_matrix",
            ShiftPresentation::Sofic(_) => "sofic",
        }
    }
}
