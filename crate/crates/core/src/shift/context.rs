use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::shift::presentation::{Edge, Sft, ShiftPresentation, SoficGraph};
use crate::shift::word::{EventuallyPeriodicPoint, Word};
use crate::shift::Caps;

pub type StateSet = BTreeSet<usize>;

/// The finite datum of a point `x` that determines every predecessor set `P_k(x)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Context {
    FinitePoint(EventuallyPeriodicPoint),
    /// The first `m` letters of `x`.
    SftSuffix(Word),
    /// The states from which `x` labels an infinite path.
    SoficStateSet(StateSet),
}

/// Realizable contexts with the letter action `c ↦ a·c` tabulated.
#[derive(Clone, Debug)]
pub struct ContextSystem {
    pub contexts: Vec<Context>,
    /// `action[c][a]` = index of the context of `a·x`, if `a·x ∈ X`.
    pub action: Vec<Vec<Option<usize>>>,
}

impl ContextSystem {
    pub fn len(&self) -> usize {
        self.contexts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.contexts.is_empty()
    }

    pub fn index_of(&self, c: &Context) -> Option<usize> {
        self.contexts.binary_search(c).ok()
    }
}

fn cap_check(n: usize, cap: usize, what: &'static str) -> Result<()> {
    if n > cap {
        Err(Error::CapExceeded { what, cap })
    } else {
        Ok(())
    }
}

impl ShiftPresentation {
    fn check_point(&self, x: &EventuallyPeriodicPoint) -> Result<()> {
        if x.max_letter() >= self.alphabet().len() {
            return Err(Error::AlphabetMismatch(format!(
                "point {x:?} uses a letter outside the alphabet"
            )));
        }
        Ok(())
    }

    /// `𝖫^k(X)` in lexicographic order.
    pub fn language(&self, k: usize, caps: &Caps) -> Result<Vec<Word>> {
        match self {
            ShiftPresentation::Finite(f) => {
                let set: BTreeSet<Word> = f
                    .points
                    .iter()
                    // X is σ-closed, so factors are prefixes of points
                    .map(|x| x.prefix(k))
                    .collect();
                cap_check(set.len(), caps.max_words, "language words")?;
                Ok(set.into_iter().collect())
            }
            ShiftPresentation::Sft(_) | ShiftPresentation::SftMatrix(_) => {
                let sft = self.as_sft().unwrap();
                let m = sft.memory();
                let contexts: BTreeSet<Word> = sft_contexts(sft, caps)?.into_iter().collect();
                let starts: BTreeSet<Word> =
                    contexts.iter().flat_map(|w| (0..=m).map(move |j| w.prefix(j))).collect();
                let mut level = vec![Word::empty()];
                for j in 1..=k {
                    let mut next = Vec::new();
                    for w in &level {
                        for a in 0..sft.alphabet.len() {
                            let v = w.with_last(a);
                            let ok = if j <= m {
                                starts.contains(&v)
                            } else {
                                sft.admissible_tail(&v) && contexts.contains(&v.suffix(m))
                            };
                            if ok {
                                next.push(v);
                            }
                        }
                    }
                    cap_check(next.len(), caps.max_words, "language words")?;
                    level = next;
                }
                Ok(level)
            }
            ShiftPresentation::Sofic(g) => {
                // keep, for each word, the set of states where some path labelled by it ends
                let all: StateSet = (0..g.num_states()).collect();
                let mut level = vec![(Word::empty(), all)];
                for _ in 0..k {
                    let mut next = Vec::new();
                    for (w, ends) in &level {
                        for a in 0..g.alphabet.len() {
                            let post = post_set(g, ends, a);
                            if !post.is_empty() {
                                next.push((w.with_last(a), post));
                            }
                        }
                    }
                    cap_check(next.len(), caps.max_words, "language words")?;
                    level = next;
                }
                Ok(level.into_iter().map(|(w, _)| w).collect())
            }
        }
    }

    /// Membership of an eventually periodic point.
    pub fn contains(&self, x: &EventuallyPeriodicPoint) -> Result<bool> {
        self.check_point(x)?;
        Ok(match self {
            ShiftPresentation::Finite(f) => f.points.contains(x),
            ShiftPresentation::Sft(_) | ShiftPresentation::SftMatrix(_) => {
                let sft = self.as_sft().unwrap();
                // every factor position is covered by a start inside pre·per
                let span = x.preperiod().len() + x.period().len();
                let window = x.prefix(span + sft.memory() + 1);
                (0..span).all(|i| sft.admissible_at(&window, i))
            }
            ShiftPresentation::Sofic(g) => !sofic_state_set(g, x).is_empty(),
        })
    }

    /// The context of a point of `X`.
    pub fn context_of(&self, x: &EventuallyPeriodicPoint) -> Result<Context> {
        if !self.contains(x)? {
            return Err(Error::NotInShift);
        }
        Ok(match self {
            ShiftPresentation::Finite(_) => Context::FinitePoint(x.clone()),
            ShiftPresentation::Sft(_) | ShiftPresentation::SftMatrix(_) => {
                Context::SftSuffix(x.prefix(self.as_sft().unwrap().memory()))
            }
            ShiftPresentation::Sofic(g) => Context::SoficStateSet(sofic_state_set(g, x)),
        })
    }

    /// All contexts realized by points of `X`, sorted.
    pub fn realizable_contexts(&self, caps: &Caps) -> Result<Vec<Context>> {
        let mut out: Vec<Context> = match self {
            ShiftPresentation::Finite(f) => {
                cap_check(f.points.len(), caps.max_contexts, "contexts")?;
                f.points.iter().cloned().map(Context::FinitePoint).collect()
            }
            ShiftPresentation::Sft(_) | ShiftPresentation::SftMatrix(_) => {
                sft_contexts(self.as_sft().unwrap(), caps)?
                    .into_iter()
                    .map(Context::SftSuffix)
                    .collect()
            }
            ShiftPresentation::Sofic(g) => {
                let tau = SubsetAutomaton::build(g, caps)?;
                tau.realizable().into_iter().map(Context::SoficStateSet).collect()
            }
        };
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// The context of `a·x` given the context of `x`, or `None` when `a·x ∉ X`.
    pub fn extend(&self, c: &Context, a: usize) -> Option<Context> {
        match (self, c) {
            (ShiftPresentation::Finite(f), Context::FinitePoint(x)) => {
                let y = x.prepend(&Word::from(vec![a]));
                f.points.contains(&y).then_some(Context::FinitePoint(y))
            }
            (ShiftPresentation::Sft(_) | ShiftPresentation::SftMatrix(_), Context::SftSuffix(w)) => {
                let sft = self.as_sft().unwrap();
                let v = w.with_first(a);
                sft.admissible_at(&v, 0)
                    .then(|| Context::SftSuffix(v.prefix(sft.memory())))
            }
            (ShiftPresentation::Sofic(g), Context::SoficStateSet(s)) => {
                let p = pred_set(g, s, a);
                (!p.is_empty()).then_some(Context::SoficStateSet(p))
            }
            _ => None,
        }
    }

    /// The context of `u·x`, if `u·x ∈ X`.
    pub fn extend_word(&self, c: &Context, u: &[usize]) -> Option<Context> {
        u.iter().rev().try_fold(c.clone(), |c, &a| self.extend(&c, a))
    }

    /// `P_k(x)` for any `x` with context `c`, in lexicographic order.
    pub fn predecessor_set(&self, c: &Context, k: usize, caps: &Caps) -> Result<Vec<Word>> {
        // grow words leftwards, tracking the context of u·x
        let mut level: Vec<(Word, Context)> = vec![(Word::empty(), c.clone())];
        for _ in 0..k {
            let mut next = Vec::new();
            for (u, d) in &level {
                for a in 0..self.alphabet().len() {
                    if let Some(e) = self.extend(d, a) {
                        next.push((u.with_first(a), e));
                    }
                }
            }
            cap_check(next.len(), caps.max_words, "predecessor words")?;
            level = next;
        }
        let mut out: Vec<Word> = level.into_iter().map(|(u, _)| u).collect();
        out.sort();
        Ok(out)
    }

    /// Membership in `C(u, v) = { v·y : y ∈ X, u·y ∈ X }`.
    pub fn cylinder_member(
        &self,
        u: &Word,
        v: &Word,
        x: &EventuallyPeriodicPoint,
    ) -> Result<bool> {
        self.alphabet().check_word(u)?;
        self.alphabet().check_word(v)?;
        self.check_point(x)?;
        let Some(y) = x.strip_prefix(v) else {
            return Ok(false);
        };
        Ok(self.contains(&y)? && self.contains(&y.prepend(u))?)
    }

    /// A point of `X` whose context is `c`.
    pub fn witness(&self, c: &Context, caps: &Caps) -> Result<EventuallyPeriodicPoint> {
        let not_realized = || Error::InvalidPresentation(format!("context {c:?} is not realizable"));
        match (self, c) {
            (ShiftPresentation::Finite(f), Context::FinitePoint(x)) => {
                f.points.contains(x).then(|| x.clone()).ok_or_else(not_realized)
            }
            (ShiftPresentation::Sft(_) | ShiftPresentation::SftMatrix(_), Context::SftSuffix(w)) => {
                let sft = self.as_sft().unwrap();
                sft_witness(sft, w, caps)?.ok_or_else(not_realized)
            }
            (ShiftPresentation::Sofic(g), Context::SoficStateSet(s)) => {
                let tau = SubsetAutomaton::build(g, caps)?;
                tau.witness(s).ok_or_else(not_realized)
            }
            _ => Err(not_realized()),
        }
    }

    /// Realizable contexts together with their action table.
    pub fn context_system(&self, caps: &Caps) -> Result<ContextSystem> {
        let contexts = self.realizable_contexts(caps)?;
        let index: HashMap<&Context, usize> =
            contexts.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut action = Vec::with_capacity(contexts.len());
        for c in &contexts {
            let row = (0..self.alphabet().len())
                .map(|a| match self.extend(c, a) {
                    None => Ok(None),
                    Some(d) => index.get(&d).copied().map(Some).ok_or_else(|| {
                        Error::Inconsistent(format!("context {d:?} reached from {c:?} is not realizable"))
                    }),
                })
                .collect::<Result<Vec<_>>>()?;
            action.push(row);
        }
        Ok(ContextSystem { contexts, action })
    }

    /// A labelled graph presenting the same shift. SFTs become the graph on
    /// their extendable `m`-words; finite shifts the graph of `σ` on points.
    pub fn to_graph(&self, caps: &Caps) -> Result<SoficGraph> {
        let alphabet = self.alphabet();
        match self {
            ShiftPresentation::Sofic(g) => Ok(g.clone()),
            ShiftPresentation::Sft(_) | ShiftPresentation::SftMatrix(_) => {
                let sft = self.as_sft().unwrap();
                let (words, succ) = sft_overlap_graph(sft, caps)?;
                let names = words
                    .iter()
                    .map(|w| if w.is_empty() { "<empty>".to_string() } else { alphabet.render(w) })
                    .collect();
                let edges = succ
                    .iter()
                    .enumerate()
                    .flat_map(|(i, out)| out.iter().map(move |&(label, to)| Edge { from: i, to, label }))
                    .collect();
                SoficGraph::new(names, alphabet, edges)
            }
            ShiftPresentation::Finite(f) => {
                let points: Vec<&EventuallyPeriodicPoint> = f.points().collect();
                let names = points.iter().map(|x| format!("{x:?}")).collect();
                let edges = points
                    .iter()
                    .enumerate()
                    .map(|(i, x)| Edge {
                        from: i,
                        to: points.iter().position(|y| **y == x.shift()).expect("σ-closed"),
                        label: x.letter(0),
                    })
                    .collect();
                SoficGraph::new(names, alphabet, edges)
            }
        }
    }

    /// Every point of `X` has a preimage under σ inside `X`.
    pub fn sigma_surjective(&self, caps: &Caps) -> Result<bool> {
        let sys = self.context_system(caps)?;
        Ok(sys.action.iter().all(|row| row.iter().any(Option::is_some)))
    }
}

pub(crate) fn pred_set(g: &SoficGraph, s: &StateSet, a: usize) -> StateSet {
    s.iter().flat_map(|&q| g.pred(a, q).iter().copied()).collect()
}

pub(crate) fn post_set(g: &SoficGraph, s: &StateSet, a: usize) -> StateSet {
    s.iter().flat_map(|&q| g.succ(a, q).iter().copied()).collect()
}

/// `S(x)`: states from which `x` labels an infinite path (empty iff `x ∉ X`).
fn sofic_state_set(g: &SoficGraph, x: &EventuallyPeriodicPoint) -> StateSet {
    // greatest fixpoint of pred_per starting from all states
    let mut s: StateSet = (0..g.num_states()).collect();
    loop {
        let t = x.period().iter().rev().fold(s.clone(), |acc, &a| pred_set(g, &acc, a));
        if t == s {
            break;
        }
        s = t;
    }
    x.preperiod().iter().rev().fold(s, |acc, &a| pred_set(g, &acc, a))
}

/// Admissible `m`-words that extend to a point, found as the greatest
/// fixpoint of "has a successor" on the overlap graph.
fn sft_contexts(sft: &Sft, caps: &Caps) -> Result<Vec<Word>> {
    let (words, succ) = sft_overlap_graph(sft, caps)?;
    let alive = alive_nodes(&succ);
    Ok(words
        .into_iter()
        .zip(alive)
        .filter_map(|(w, ok)| ok.then_some(w))
        .collect())
}

type OverlapGraph = (Vec<Word>, Vec<Vec<(usize, usize)>>);

/// Vertices: admissible `m`-words. Edge `w → w'` labelled `w₀` when `w·w'_{m-1}` is admissible.
fn sft_overlap_graph(sft: &Sft, caps: &Caps) -> Result<OverlapGraph> {
    let m = sft.memory();
    let k = sft.alphabet.len();
    let mut words = vec![Word::empty()];
    for _ in 0..m {
        let mut next = Vec::new();
        for w in &words {
            for a in 0..k {
                let v = w.with_last(a);
                if sft.admissible_tail(&v) {
                    next.push(v);
                }
            }
        }
        cap_check(next.len(), caps.max_contexts, "contexts")?;
        words = next;
    }
    let index: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let succ = words
        .iter()
        .map(|w| {
            (0..k)
                .filter_map(|b| {
                    let v = w.with_last(b);
                    if !sft.admissible_tail(&v) {
                        return None;
                    }
                    let label = v[0];
                    let next = v.suffix(m);
                    index.get(&next).map(|&j| (label, j))
                })
                .collect()
        })
        .collect();
    Ok((words, succ))
}

/// Nodes with an infinite forward path.
fn alive_nodes(succ: &[Vec<(usize, usize)>]) -> Vec<bool> {
    let mut alive = vec![true; succ.len()];
    loop {
        let mut changed = false;
        for i in 0..succ.len() {
            if alive[i] && !succ[i].iter().any(|&(_, j)| alive[j]) {
                alive[i] = false;
                changed = true;
            }
        }
        if !changed {
            return alive;
        }
    }
}

/// Follows the first live edge from `start` until a node repeats.
fn lasso(succ: &[Vec<(usize, usize)>], alive: &[bool], start: usize) -> (Vec<usize>, Vec<usize>) {
    let mut seen = HashMap::new();
    let mut labels = Vec::new();
    let mut cur = start;
    while !seen.contains_key(&cur) {
        seen.insert(cur, labels.len());
        let &(a, next) = succ[cur]
            .iter()
            .find(|&&(_, j)| alive[j])
            .expect("live node has a live successor");
        labels.push(a);
        cur = next;
    }
    let cut = seen[&cur];
    let per = labels.split_off(cut);
    (labels, per)
}

fn sft_witness(sft: &Sft, w: &Word, caps: &Caps) -> Result<Option<EventuallyPeriodicPoint>> {
    let (words, succ) = sft_overlap_graph(sft, caps)?;
    let alive = alive_nodes(&succ);
    let Some(start) = words.iter().position(|v| v == w).filter(|&i| alive[i]) else {
        return Ok(None);
    };
    let (pre, per) = lasso(&succ, &alive, start);
    Ok(Some(EventuallyPeriodicPoint::new(Word::from(pre), Word::from(per))?))
}

/// Subset construction tracking, for every state `q`, the states reachable
/// from `q` by the prefix read so far. A node's support is the set of `q`
/// with a nonempty entry. Along a point the support shrinks and then stays
/// put, so the sets `S(x)` are the supports of reachable nodes that start an
/// infinite path of support-preserving edges.
struct SubsetAutomaton {
    nodes: Vec<Vec<StateSet>>,
    /// BFS parent (node, letter) for path recovery.
    parent: Vec<Option<(usize, usize)>>,
    /// Support-preserving edges only.
    succ: Vec<Vec<(usize, usize)>>,
    alive: Vec<bool>,
}

impl SubsetAutomaton {
    fn build(g: &SoficGraph, caps: &Caps) -> Result<Self> {
        let n = g.num_states();
        let root: Vec<StateSet> = (0..n).map(|q| StateSet::from([q])).collect();
        let mut nodes = vec![root.clone()];
        let mut parent = vec![None];
        let mut succ: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
        let mut index = HashMap::from([(root, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for a in 0..g.alphabet.len() {
                let image: Vec<StateSet> = nodes[i].iter().map(|f| post_set(g, f, a)).collect();
                if image.iter().all(|h| h.is_empty()) {
                    continue;
                }
                let same_support = nodes[i]
                    .iter()
                    .zip(&image)
                    .all(|(f, h)| f.is_empty() == h.is_empty());
                let j = match index.get(&image) {
                    Some(&j) => j,
                    None => {
                        let j = nodes.len();
                        cap_check(j + 1, caps.max_contexts, "subset-construction nodes")?;
                        index.insert(image.clone(), j);
                        nodes.push(image);
                        parent.push(Some((i, a)));
                        succ.push(Vec::new());
                        queue.push_back(j);
                        j
                    }
                };
                if same_support {
                    succ[i].push((a, j));
                }
            }
        }
        let alive = alive_nodes(&succ);
        Ok(SubsetAutomaton {
            nodes,
            parent,
            succ,
            alive,
        })
    }

    fn support(&self, i: usize) -> StateSet {
        self.nodes[i]
            .iter()
            .enumerate()
            .filter_map(|(q, f)| (!f.is_empty()).then_some(q))
            .collect()
    }

    fn realizable(&self) -> BTreeSet<StateSet> {
        (0..self.nodes.len())
            .filter(|&i| self.alive[i])
            .map(|i| self.support(i))
            .collect()
    }

    fn witness(&self, s: &StateSet) -> Option<EventuallyPeriodicPoint> {
        let target = (0..self.nodes.len()).find(|&i| self.alive[i] && self.support(i) == *s)?;
        let mut prefix = Vec::new();
        let mut cur = target;
        while let Some((p, a)) = self.parent[cur] {
            prefix.push(a);
            cur = p;
        }
        prefix.reverse();
        let (pre, per) = lasso(&self.succ, &self.alive, target);
        prefix.extend(pre);
        EventuallyPeriodicPoint::new(Word::from(prefix), Word::from(per)).ok()
    }
}
