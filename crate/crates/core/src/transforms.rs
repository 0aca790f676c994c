//! Structural moves on shift spaces: higher-block recoding, symbolic
//! expansion at a letter, and bipartite letter splitting.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::shift::io::content_hash;
use crate::shift::{
    Alphabet, Caps, Edge, EventuallyPeriodicPoint, ShiftPresentation, SoficGraph, Word,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case", deny_unknown_fields)]
pub enum Move {
    Expand { a0: String, star: String },
    HigherBlock { n: usize },
    Split { f: BTreeMap<String, (String, String)> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransformReport {
    pub input_hash: String,
    pub output_hash: String,
    #[serde(rename = "move")]
    pub descriptor: Move,
    /// Each new symbol with the old letters it encodes (higher block), or
    /// each old symbol with its image (expansion, splitting).
    pub symbol_map: BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Debug)]
pub struct Transformed {
    pub presentation: ShiftPresentation,
    pub report: TransformReport,
}

/// `f(a) = (b_a, c_a)` with disjoint target alphabets; injective on pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteExpression {
    source: Alphabet,
    first: Alphabet,
    second: Alphabet,
    map: Vec<(usize, usize)>,
}

impl BipartiteExpression {
    pub fn new(source: &Alphabet, f: &BTreeMap<String, (String, String)>) -> Result<Self> {
        if let Some(k) = f.keys().find(|k| !source.contains(k)) {
            return Err(Error::AlphabetMismatch(format!("`{k}` is not a source symbol")));
        }
        let mut firsts: Vec<String> = Vec::new();
        let mut seconds: Vec<String> = Vec::new();
        let mut pairs = Vec::with_capacity(source.len());
        for a in source.symbols() {
            let (b, c) = f
                .get(a)
                .ok_or_else(|| Error::InvalidTransform(format!("no image given for `{a}`")))?;
            if !firsts.contains(b) {
                firsts.push(b.clone());
            }
            if !seconds.contains(c) {
                seconds.push(c.clone());
            }
            pairs.push((b.clone(), c.clone()));
        }
        if let Some(s) = firsts.iter().find(|s| seconds.contains(s)) {
            return Err(Error::InvalidTransform(format!(
                "`{s}` appears in both target alphabets"
            )));
        }
        let distinct: BTreeSet<&(String, String)> = pairs.iter().collect();
        if distinct.len() != pairs.len() {
            return Err(Error::InvalidTransform("letter splitting is not injective".into()));
        }
        let first = Alphabet::new(firsts)?;
        let second = Alphabet::new(seconds)?;
        let map = pairs
            .iter()
            .map(|(b, c)| (first.index_of(b).unwrap(), second.index_of(c).unwrap()))
            .collect();
        Ok(BipartiteExpression {
            source: source.clone(),
            first,
            second,
            map,
        })
    }

    /// `a ↦ (b_a, c_a)` with fresh names `b_a`, `c_a`.
    pub fn standard(source: &Alphabet) -> Result<Self> {
        let f = source
            .symbols()
            .iter()
            .map(|a| (a.clone(), (format!("b{a}"), format!("c{a}"))))
            .collect();
        Self::new(source, &f)
    }

    pub fn first_alphabet(&self) -> &Alphabet {
        &self.first
    }

    pub fn second_alphabet(&self) -> &Alphabet {
        &self.second
    }

    /// Union alphabet: first-side symbols, then second-side symbols.
    pub fn union_alphabet(&self) -> Alphabet {
        Alphabet::new(self.first.symbols().iter().chain(self.second.symbols()).cloned())
            .expect("sides are disjoint")
    }

    /// Index in the union alphabet of the letter `b_a`.
    pub fn first_of(&self, a: usize) -> usize {
        self.map[a].0
    }

    /// Index in the union alphabet of the letter `c_a`.
    pub fn second_of(&self, a: usize) -> usize {
        self.first.len() + self.map[a].1
    }

    pub fn is_first_side(&self, union_letter: usize) -> bool {
        union_letter < self.first.len()
    }

    pub fn as_move(&self) -> Move {
        Move::Split {
            f: self
                .source
                .symbols()
                .iter()
                .enumerate()
                .map(|(a, s)| {
                    let (b, c) = self.map[a];
                    (
                        s.clone(),
                        (self.first.symbol(b).to_string(), self.second.symbol(c).to_string()),
                    )
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SplitResult {
    /// `f̃(X) ∪ σ f̃(X)` over both target alphabets.
    pub union: ShiftPresentation,
    /// The shift read from second-side letters, over pair symbols `"c b"`.
    pub second: ShiftPresentation,
    pub report: TransformReport,
}

fn report(
    input: &ShiftPresentation,
    output: &ShiftPresentation,
    descriptor: Move,
    symbol_map: BTreeMap<String, Vec<String>>,
) -> TransformReport {
    TransformReport {
        input_hash: content_hash(input),
        output_hash: content_hash(output),
        descriptor,
        symbol_map,
    }
}

fn require_surjective(p: &ShiftPresentation, caps: &Caps, what: &str) -> Result<()> {
    if p.sigma_surjective(caps)? {
        Ok(())
    } else {
        Err(Error::InvalidTransform(format!(
            "{what} needs a shift in which every point has a preimage (σ(X) = X)"
        )))
    }
}

/// Applies a move descriptor.
pub fn apply_move(p: &ShiftPresentation, m: &Move, caps: &Caps) -> Result<Transformed> {
    match m {
        Move::HigherBlock { n } => higher_block(p, *n, caps),
        Move::Expand { a0, star } => symbolic_expansion(p, a0, star, caps),
        Move::Split { f } => {
            let f = BipartiteExpression::new(p.alphabet(), f)?;
            let s = split_letters(p, &f, caps)?;
            Ok(Transformed {
                presentation: s.union,
                report: s.report,
            })
        }
    }
}

/// Recodes `x` as its sequence of overlapping `N`-blocks.
pub fn higher_block(p: &ShiftPresentation, n: usize, caps: &Caps) -> Result<Transformed> {
    if n < 2 {
        return Err(Error::InvalidTransform("block length must be at least 2".into()));
    }
    let alphabet = p.alphabet();
    let blocks = p.language(n, caps)?;
    if blocks.len() > caps.max_alphabet {
        return Err(Error::CapExceeded {
            what: "higher-block alphabet",
            cap: caps.max_alphabet,
        });
    }
    let block_name = |w: &Word| alphabet.names(w).concat();
    let mut names: Vec<String> = blocks.iter().map(block_name).collect();
    if names.iter().collect::<BTreeSet<_>>().len() != names.len() {
        names = blocks.iter().map(|w| alphabet.names(w).join(".")).collect();
    }
    let new_alphabet = Alphabet::new(names)?;
    let index: HashMap<&Word, usize> = blocks.iter().enumerate().map(|(i, w)| (w, i)).collect();

    let output = match p {
        ShiftPresentation::Sft(_) | ShiftPresentation::SftMatrix(_) => {
            let sft = p.as_sft().unwrap();
            let mut forbidden = Vec::new();
            for (i, u) in blocks.iter().enumerate() {
                for (j, v) in blocks.iter().enumerate() {
                    if u[1..] != v[..n - 1] {
                        forbidden.push(Word::from(vec![i, j]));
                    }
                }
            }
            // decoded words long enough to contain any forbidden word across blocks
            let k = (n + 1).max(sft.memory() + 1);
            let mut level: Vec<Word> = blocks.clone();
            for _ in n..k {
                let mut next = Vec::new();
                for w in &level {
                    for a in 0..alphabet.len() {
                        let v = w.with_last(a);
                        if index.contains_key(&v.suffix(n)) {
                            next.push(v);
                        }
                    }
                }
                if next.len() > caps.max_words {
                    return Err(Error::CapExceeded {
                        what: "higher-block constraint words",
                        cap: caps.max_words,
                    });
                }
                level = next;
            }
            for w in level.iter().filter(|w| !sft.admissible(w)) {
                forbidden.push((0..=k - n).map(|i| index[&w.slice(i, i + n)]).collect());
            }
            ShiftPresentation::sft(new_alphabet.clone(), forbidden)?
        }
        ShiftPresentation::Sofic(g) => {
            // paths of `len ≥ 1` edges, as edge index lists
            let paths = |len: usize| -> Result<Vec<Vec<usize>>> {
                let mut level: Vec<Vec<usize>> = (0..g.edges().len()).map(|e| vec![e]).collect();
                for _ in 1..len {
                    let mut next = Vec::new();
                    for path in &level {
                        let end = g.edges()[*path.last().unwrap()].to;
                        for (e, edge) in g.edges().iter().enumerate() {
                            if edge.from == end {
                                let mut q = path.clone();
                                q.push(e);
                                next.push(q);
                            }
                        }
                    }
                    if next.len() > caps.max_contexts {
                        return Err(Error::CapExceeded {
                            what: "higher-block graph size",
                            cap: caps.max_contexts,
                        });
                    }
                    level = next;
                }
                Ok(level)
            };
            let path_name = |path: &[usize]| -> String {
                let mut s = g.states()[g.edges()[path[0]].from].clone();
                for &e in path {
                    let edge = g.edges()[e];
                    s.push_str(&format!("-{}-{}", g.alphabet().symbol(edge.label), g.states()[edge.to]));
                }
                s
            };
            let (states, edges) = (paths(n - 1)?, paths(n)?);
            let state_index: HashMap<&Vec<usize>, usize> =
                states.iter().enumerate().map(|(i, s)| (s, i)).collect();
            let names = states.iter().map(|s| path_name(s)).collect();
            let new_edges = edges
                .iter()
                .map(|path| {
                    let label: Word = path.iter().map(|&e| g.edges()[e].label).collect();
                    Edge {
                        from: state_index[&path[..n - 1].to_vec()],
                        to: state_index[&path[1..].to_vec()],
                        label: index[&label],
                    }
                })
                .collect();
            ShiftPresentation::sofic(SoficGraph::new(names, &new_alphabet, new_edges)?)
        }
        ShiftPresentation::Finite(f) => {
            let recode = |x: &EventuallyPeriodicPoint| -> Result<EventuallyPeriodicPoint> {
                let (a, b) = (x.preperiod().len(), x.period().len());
                let block = |i: usize| index[&x.prefix(i + n).slice(i, i + n)];
                EventuallyPeriodicPoint::new((0..a).map(block).collect(), (a..a + b).map(block).collect())
            };
            let points = f.points().map(recode).collect::<Result<Vec<_>>>()?;
            ShiftPresentation::finite(new_alphabet.clone(), points)?
        }
    };
    let symbol_map = blocks
        .iter()
        .zip(new_alphabet.symbols())
        .map(|(w, name)| (name.clone(), alphabet.names(w)))
        .collect();
    Ok(Transformed {
        report: report(p, &output, Move::HigherBlock { n }, symbol_map),
        presentation: output,
    })
}

/// Replaces every `a0` by `a0 star`; the result holds the images and their shifts.
pub fn symbolic_expansion(
    p: &ShiftPresentation,
    a0: &str,
    star: &str,
    caps: &Caps,
) -> Result<Transformed> {
    let alphabet = p.alphabet();
    let a = alphabet
        .index_of(a0)
        .ok_or_else(|| Error::UnknownSymbol(a0.to_string()))?;
    if alphabet.contains(star) {
        return Err(Error::InvalidTransform(format!("`{star}` is already a symbol")));
    }
    require_surjective(p, caps, "symbolic expansion")?;
    let new_alphabet = Alphabet::new(alphabet.symbols().iter().cloned().chain([star.to_string()]))?;
    let s = alphabet.len();
    let eta = |w: &[usize]| -> Word {
        w.iter()
            .flat_map(|&b| if b == a { vec![a, s] } else { vec![b] })
            .collect()
    };
    let output = match p {
        ShiftPresentation::Sft(_) | ShiftPresentation::SftMatrix(_) => {
            let sft = p.as_sft().unwrap();
            let mut forbidden: Vec<Word> = Vec::new();
            for b in 0..=s {
                if b != s {
                    forbidden.push(Word::from(vec![a, b]));
                }
                if b != a {
                    forbidden.push(Word::from(vec![b, s]));
                }
            }
            for w in sft.forbidden() {
                forbidden.push(eta(w));
                if w[0] == a {
                    forbidden.push(eta(&w[1..]).with_first(s));
                }
            }
            ShiftPresentation::sft(new_alphabet.clone(), forbidden)?
        }
        ShiftPresentation::Sofic(g) => {
            let mut states = g.states().to_vec();
            let mut edges = Vec::new();
            for e in g.edges() {
                if e.label == a {
                    let mid = states.len();
                    states.push(format!(
                        "{}-{}-{}",
                        g.states()[e.from],
                        alphabet.symbol(a),
                        g.states()[e.to]
                    ));
                    edges.push(Edge { from: e.from, to: mid, label: a });
                    edges.push(Edge { from: mid, to: e.to, label: s });
                } else {
                    edges.push(*e);
                }
            }
            ShiftPresentation::sofic(SoficGraph::new(states, &new_alphabet, edges)?)
        }
        ShiftPresentation::Finite(f) => {
            let mut points = Vec::new();
            for x in f.points() {
                let y = x.substitute(|b| eta(&[b]));
                if x.letter(0) == a {
                    points.push(y.shift());
                }
                points.push(y);
            }
            ShiftPresentation::finite(new_alphabet.clone(), points)?
        }
    };
    let symbol_map = alphabet
        .symbols()
        .iter()
        .enumerate()
        .map(|(b, name)| (name.clone(), new_alphabet.names(&eta(&[b]))))
        .collect();
    Ok(Transformed {
        report: report(
            p,
            &output,
            Move::Expand {
                a0: a0.to_string(),
                star: star.to_string(),
            },
            symbol_map,
        ),
        presentation: output,
    })
}

/// Splits every letter `a` into `b_a c_a`.
pub fn split_letters(
    p: &ShiftPresentation,
    f: &BipartiteExpression,
    caps: &Caps,
) -> Result<SplitResult> {
    if f.source != *p.alphabet() {
        return Err(Error::AlphabetMismatch(
            "bipartite expression is over a different alphabet".into(),
        ));
    }
    require_surjective(p, caps, "letter splitting")?;
    let union_alphabet = f.union_alphabet();
    let pair_names: Vec<String> = (0..f.second.len())
        .flat_map(|c| (0..f.first.len()).map(move |b| (c, b)))
        .map(|(c, b)| format!("{} {}", f.second.symbol(c), f.first.symbol(b)))
        .collect();
    let pair_alphabet = Alphabet::new(pair_names)?;
    let pair = |a: usize, a2: usize| f.map[a].1 * f.first.len() + f.map[a2].0;

    let (union, second) = match p {
        ShiftPresentation::Finite(fin) => {
            let mut union_points = Vec::new();
            let mut second_points = Vec::new();
            for x in fin.points() {
                let y = x.substitute(|a| Word::from(vec![f.first_of(a), f.second_of(a)]));
                union_points.push(y.shift());
                union_points.push(y);
                let (len_pre, len_per) = (x.preperiod().len(), x.period().len());
                let d = |i: usize| pair(x.letter(i), x.letter(i + 1));
                second_points.push(EventuallyPeriodicPoint::new(
                    (0..len_pre).map(d).collect(),
                    (len_pre..len_pre + len_per).map(d).collect(),
                )?);
            }
            (
                ShiftPresentation::finite(union_alphabet.clone(), union_points)?,
                ShiftPresentation::finite(pair_alphabet, second_points)?,
            )
        }
        _ => {
            let g = p.to_graph(caps)?;
            if g.alphabet() != p.alphabet() {
                return Err(Error::InvalidPresentation(
                    "some symbols occur in no point; drop them before splitting".into(),
                ));
            }
            let mut states = g.states().to_vec();
            let mut edges = Vec::new();
            let n = g.num_states();
            for (i, e) in g.edges().iter().enumerate() {
                states.push(format!(
                    "{}-{}-{}",
                    g.states()[e.from],
                    g.alphabet().symbol(e.label),
                    g.states()[e.to]
                ));
                edges.push(Edge { from: e.from, to: n + i, label: f.first_of(e.label) });
                edges.push(Edge { from: n + i, to: e.to, label: f.second_of(e.label) });
            }
            let union = SoficGraph::new(states.clone(), &union_alphabet, edges)?;
            let mut second_edges = Vec::new();
            for (i, e) in g.edges().iter().enumerate() {
                for (j, e2) in g.edges().iter().enumerate() {
                    if e.to == e2.from {
                        second_edges.push(Edge { from: i, to: j, label: pair(e.label, e2.label) });
                    }
                }
            }
            let second = SoficGraph::new(states[n..].to_vec(), &pair_alphabet, second_edges)?;
            (ShiftPresentation::sofic(union), ShiftPresentation::sofic(second))
        }
    };
    let symbol_map = (0..f.source.len())
        .map(|a| {
            (
                f.source.symbol(a).to_string(),
                vec![
                    union_alphabet.symbol(f.first_of(a)).to_string(),
                    union_alphabet.symbol(f.second_of(a)).to_string(),
                ],
            )
        })
        .collect();
    Ok(SplitResult {
        report: report(p, &union, f.as_move(), symbol_map),
        union,
        second,
    })
}
