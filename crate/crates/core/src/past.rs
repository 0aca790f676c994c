//! Past-equivalence partitions, their refinement tower and the integer
//! matrices built from it.
//!
//! Classes are computed by Moore-style refinement on the context carrier:
//! two contexts are `(ℓ+1)`-past equivalent iff they are `ℓ`-past equivalent
//! and every letter `a` sends them to the same `ℓ`-class (or is undefined
//! on both), since `P_{ℓ+1}(x) = ⋃_a P_ℓ(a·x)·a`.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::abelian::IntMatrix;
use crate::error::{Error, Result};
use crate::shift::{Caps, Context, ContextSystem, ShiftPresentation, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "level", rename_all = "snake_case")]
pub enum Stabilization {
    StableAt(usize),
    NotStableWithin(usize),
}

/// The `ℓ`-past equivalence classes, as sets of context indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionLevel {
    pub level: usize,
    /// Class index of each context.
    pub class_of: Vec<usize>,
    /// Contexts of each class, ascending.
    pub classes: Vec<Vec<usize>>,
}

impl PartitionLevel {
    pub fn m(&self) -> usize {
        self.classes.len()
    }

    pub fn representative(&self, class: usize) -> usize {
        self.classes[class][0]
    }
}

/// Sorted word lists compared so that the set containing the first
/// differing word comes first.
fn richer_first(a: &[Word], b: &[Word]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => {}
            other => return other,
        }
    }
    b.len().cmp(&a.len())
}

/// `Some` before `None`, smaller classes first.
fn child_key_cmp(a: &[Option<usize>], b: &[Option<usize>]) -> Ordering {
    let rank = |x: &Option<usize>| x.map_or((1, 0), |i| (0, i));
    a.iter().map(rank).cmp(b.iter().map(rank))
}

#[derive(Clone, Debug)]
pub struct PartitionChain {
    presentation: ShiftPresentation,
    caps: Caps,
    system: ContextSystem,
    levels: Vec<PartitionLevel>,
    /// `nonempty[k][c]`: `P_k` of context `c` is nonempty.
    nonempty: Vec<Vec<bool>>,
    /// Contexts with `P_k ≠ ∅` for every `k`.
    eventual: Vec<bool>,
    stabilization: Stabilization,
}

impl PartitionChain {
    /// Levels `0..=lmax`.
    pub fn build(p: &ShiftPresentation, lmax: usize, caps: &Caps) -> Result<Self> {
        if lmax < 1 {
            return Err(Error::OutOfRange("the tower needs at least one refinement step".into()));
        }
        let system = p.context_system(caps)?;
        let n = system.len();
        if n == 0 {
            return Err(Error::EmptyShift);
        }
        let mut levels = vec![PartitionLevel {
            level: 0,
            class_of: vec![0; n],
            classes: vec![(0..n).collect()],
        }];
        for l in 0..lmax {
            let next = refine(p, &system, &levels[l], caps)?;
            levels.push(next);
        }
        let stabilization = match (0..lmax).find(|&l| levels[l].m() == levels[l + 1].m()) {
            Some(l0) => {
                if let Some(l) = (l0..lmax).find(|&l| levels[l].class_of != levels[l + 1].class_of) {
                    return Err(Error::Inconsistent(format!(
                        "partition stabilised at level {l0} but changed at level {}",
                        l + 1
                    )));
                }
                Stabilization::StableAt(l0)
            }
            None => Stabilization::NotStableWithin(lmax),
        };

        let mut nonempty = vec![vec![true; n]];
        for k in 0..=lmax {
            let row = (0..n)
                .map(|c| system.action[c].iter().flatten().any(|&d| nonempty[k][d]))
                .collect();
            nonempty.push(row);
        }
        let mut eventual = vec![true; n];
        loop {
            let next: Vec<bool> = (0..n)
                .map(|c| eventual[c] && system.action[c].iter().flatten().any(|&d| eventual[d]))
                .collect();
            if next == eventual {
                break;
            }
            eventual = next;
        }
        Ok(PartitionChain {
            presentation: p.clone(),
            caps: caps.clone(),
            system,
            levels,
            nonempty,
            eventual,
            stabilization,
        })
    }

    pub fn presentation(&self) -> &ShiftPresentation {
        &self.presentation
    }

    pub fn contexts(&self) -> &[Context] {
        &self.system.contexts
    }

    pub fn system(&self) -> &ContextSystem {
        &self.system
    }

    pub fn lmax(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn stabilization(&self) -> Stabilization {
        self.stabilization
    }

    pub fn stable_level(&self) -> Option<usize> {
        match self.stabilization {
            Stabilization::StableAt(l) => Some(l),
            Stabilization::NotStableWithin(_) => None,
        }
    }

    pub fn level(&self, l: usize) -> Result<&PartitionLevel> {
        self.levels
            .get(l)
            .ok_or_else(|| Error::OutOfRange(format!("level {l} beyond lmax {}", self.lmax())))
    }

    pub fn levels(&self) -> &[PartitionLevel] {
        &self.levels
    }

    pub fn m_sequence(&self) -> Vec<usize> {
        self.levels.iter().map(PartitionLevel::m).collect()
    }

    fn check_step(&self, l: usize) -> Result<()> {
        if l + 1 > self.lmax() {
            return Err(Error::OutOfRange(format!(
                "level {l}+1 beyond lmax {}",
                self.lmax()
            )));
        }
        Ok(())
    }

    /// `I_ℓ(i, j) = 1` iff class `i` at level `ℓ+1` lies in class `j` at level `ℓ`.
    pub fn matrix_i(&self, l: usize) -> Result<IntMatrix> {
        self.check_step(l)?;
        let (fine, coarse) = (&self.levels[l + 1], &self.levels[l]);
        let mut m = IntMatrix::zeros(fine.m(), coarse.m());
        for (i, members) in fine.classes.iter().enumerate() {
            let parents: Vec<usize> = members.iter().map(|&c| coarse.class_of[c]).collect();
            if parents.iter().any(|&j| j != parents[0]) {
                return Err(Error::Inconsistent(format!(
                    "level-{} class {i} is not contained in one level-{l} class",
                    l + 1
                )));
            }
            m[(i, parents[0])] = BigInt::one();
        }
        Ok(m)
    }

    /// `A_ℓ(·, ·, a)` for every letter `a`, in alphabet order.
    pub fn matrix_a(&self, l: usize) -> Result<Vec<IntMatrix>> {
        self.check_step(l)?;
        let (fine, coarse) = (&self.levels[l + 1], &self.levels[l]);
        let alphabet = self.presentation.alphabet();
        (0..alphabet.len())
            .map(|a| {
                let mut m = IntMatrix::zeros(fine.m(), coarse.m());
                for (i, members) in fine.classes.iter().enumerate() {
                    let mut targets: Vec<usize> = members
                        .iter()
                        .filter_map(|&c| self.system.action[c][a])
                        .map(|d| coarse.class_of[d])
                        .collect();
                    targets.sort_unstable();
                    targets.dedup();
                    match targets.len() {
                        0 => {}
                        1 => m[(i, targets[0])] = BigInt::one(),
                        _ => {
                            return Err(Error::Straddle {
                                level: l,
                                class: i,
                                symbol: alphabet.symbol(a).to_string(),
                                targets,
                            })
                        }
                    }
                }
                Ok(m)
            })
            .collect()
    }

    /// `Σ_a A_ℓ(·, ·, a)`.
    pub fn matrix_a_sum(&self, l: usize) -> Result<IntMatrix> {
        let parts = self.matrix_a(l)?;
        let (fine, coarse) = (self.levels[l + 1].m(), self.levels[l].m());
        Ok(parts.iter().fold(IntMatrix::zeros(fine, coarse), |acc, m| &acc + m))
    }

    /// `B^ℓ = I_ℓ − Σ_a A_ℓ(·, ·, a)`.
    pub fn matrix_b(&self, l: usize) -> Result<IntMatrix> {
        Ok(&self.matrix_i(l)? - &self.matrix_a_sum(l)?)
    }

    /// Classes at level `ℓ` whose `P_k` is nonempty (`k ≤ ℓ`), ascending.
    pub fn index_set_m(&self, k: usize, l: usize) -> Result<Vec<usize>> {
        if k > l {
            return Err(Error::OutOfRange(format!("M_k^l needs k ≤ l, got k={k}, l={l}")));
        }
        let level = self.level(l)?;
        let row = &self.nonempty[k];
        let mut out = Vec::new();
        for (i, members) in level.classes.iter().enumerate() {
            let v = row[members[0]];
            if members.iter().any(|&c| row[c] != v) {
                return Err(Error::Inconsistent(format!(
                    "P_{k} emptiness differs inside level-{l} class {i}"
                )));
            }
            if v {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// Classes at level `ℓ` with `P_k ≠ ∅` for every `k`. Only meaningful at
    /// stable levels, where classes are unions of full-past classes.
    pub fn eventual_mask(&self, l: usize) -> Result<Vec<bool>> {
        let level = self.level(l)?;
        level
            .classes
            .iter()
            .enumerate()
            .map(|(i, members)| {
                let v = self.eventual[members[0]];
                if members.iter().any(|&c| self.eventual[c] != v) {
                    Err(Error::Inconsistent(format!(
                        "infinite past differs inside level-{l} class {i}"
                    )))
                } else {
                    Ok(v)
                }
            })
            .collect()
    }

    /// `(I_k^ℓ, A_k^ℓ, δ_k^ℓ)` on M-indexed coordinates; `δ` only for `k < ℓ`.
    pub fn restricted_maps(&self, k: usize, l: usize) -> Result<RestrictedMaps> {
        self.check_step(l)?;
        let m_k_l = self.index_set_m(k, l)?;
        let m_k_next = self.index_set_m(k, l + 1)?;
        let m_k1_next = self.index_set_m(k + 1, l + 1)?;
        let i_map = self.matrix_i(l)?.select(&m_k_next, &m_k_l);
        let a_map = self.matrix_a_sum(l)?.select(&m_k1_next, &m_k_l);
        let delta = if k < l {
            let m_k1_l = self.index_set_m(k + 1, l)?;
            Some(IntMatrix::from_fn(m_k1_l.len(), m_k_l.len(), |r, c| {
                BigInt::from((m_k1_l[r] == m_k_l[c]) as u8)
            }))
        } else {
            None
        };
        Ok(RestrictedMaps {
            i: i_map,
            a: a_map,
            delta,
        })
    }

    /// `(P_0, …, P_ℓ)` of a class, or `None` once more than the signature cap
    /// of words would be needed.
    pub fn signature(&self, l: usize, class: usize) -> Result<Option<Vec<Vec<Word>>>> {
        let level = self.level(l)?;
        let c = &self.system.contexts[level.representative(class)];
        let mut budget = self.caps.max_signature_words;
        let mut caps = self.caps.clone();
        let mut out = Vec::with_capacity(l + 1);
        for k in 0..=l {
            caps.max_words = budget;
            match self.presentation.predecessor_set(c, k, &caps) {
                Ok(words) => {
                    budget -= words.len().min(budget);
                    out.push(words);
                }
                Err(Error::CapExceeded { .. }) => return Ok(None),
                Err(e) => return Err(e),
            }
        }
        Ok(Some(out))
    }

    pub fn export(&self) -> Result<ChainExport> {
        let alphabet = self.presentation.alphabet();
        let render = |w: &Word| if w.is_empty() { String::new() } else { alphabet.render(w) };
        let mut levels = Vec::new();
        for level in &self.levels {
            let l = level.level;
            let classes = (0..level.m())
                .map(|i| {
                    Ok(ClassExport {
                        contexts: level.classes[i]
                            .iter()
                            .map(|&c| self.render_context(&self.system.contexts[c]))
                            .collect(),
                        signature: self
                            .signature(l, i)?
                            .map(|sig| sig.iter().map(|ws| ws.iter().map(render).collect()).collect()),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let m_sets = (0..=l).map(|k| self.index_set_m(k, l)).collect::<Result<Vec<_>>>()?;
            levels.push(LevelExport {
                level: l,
                m: level.m(),
                classes,
                m_sets,
            });
        }
        let steps = (0..self.lmax())
            .map(|l| {
                Ok(StepExport {
                    level: l,
                    i: self.matrix_i(l)?,
                    a: self.matrix_a(l)?,
                    a_sum: self.matrix_a_sum(l)?,
                    b: self.matrix_b(l)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ChainExport {
            alphabet: alphabet.symbols().to_vec(),
            m: self.m_sequence(),
            stabilization: self.stabilization,
            levels,
            steps,
        })
    }

    /// ASCII rendering of a context.
    pub fn render_context(&self, c: &Context) -> String {
        let alphabet = self.presentation.alphabet();
        let word = |w: &Word| if w.is_empty() { String::new() } else { alphabet.render(w) };
        match c {
            Context::FinitePoint(x) => format!("{}({})^inf", word(x.preperiod()), word(x.period())),
            Context::SftSuffix(w) if w.is_empty() => "<empty>".to_string(),
            Context::SftSuffix(w) => word(w),
            Context::SoficStateSet(s) => {
                let ShiftPresentation::Sofic(g) = &self.presentation else {
                    unreachable!("state sets only arise from sofic presentations")
                };
                let names: Vec<&str> = s.iter().map(|&q| g.states()[q].as_str()).collect();
                format!("{{{}}}", names.join(","))
            }
        }
    }
}

fn refine(
    p: &ShiftPresentation,
    system: &ContextSystem,
    coarse: &PartitionLevel,
    caps: &Caps,
) -> Result<PartitionLevel> {
    let l = coarse.level;
    let mut groups: BTreeMap<(usize, Vec<Option<usize>>), Vec<usize>> = BTreeMap::new();
    for c in 0..system.len() {
        let children = system.action[c]
            .iter()
            .map(|d| d.map(|d| coarse.class_of[d]))
            .collect();
        groups.entry((coarse.class_of[c], children)).or_default().push(c);
    }
    let mut by_parent: Vec<Vec<(Vec<Option<usize>>, Vec<usize>)>> = vec![Vec::new(); coarse.m()];
    for ((parent, children), members) in groups {
        by_parent[parent].push((children, members));
    }
    let mut sig_caps = caps.clone();
    sig_caps.max_words = caps.max_signature_words;
    let mut classes = Vec::new();
    for mut siblings in by_parent {
        if siblings.len() > 1 {
            let new_grade: Result<Vec<Vec<Word>>> = siblings
                .iter()
                .map(|(_, members)| p.predecessor_set(&system.contexts[members[0]], l + 1, &sig_caps))
                .collect();
            match new_grade {
                Ok(words) => {
                    let mut order: Vec<usize> = (0..siblings.len()).collect();
                    order.sort_by(|&x, &y| richer_first(&words[x], &words[y]));
                    let mut taken: Vec<Option<_>> = siblings.into_iter().map(Some).collect();
                    siblings = order.into_iter().map(|i| taken[i].take().unwrap()).collect();
                }
                Err(Error::CapExceeded { .. }) => {
                    siblings.sort_by(|x, y| child_key_cmp(&x.0, &y.0));
                }
                Err(e) => return Err(e),
            }
        }
        classes.extend(siblings.into_iter().map(|(_, members)| members));
    }
    let mut class_of = vec![0; system.len()];
    for (i, members) in classes.iter().enumerate() {
        for &c in members {
            class_of[c] = i;
        }
    }
    Ok(PartitionLevel {
        level: l + 1,
        class_of,
        classes,
    })
}

/// The restricted maps between M-indexed coordinate groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedMaps {
    /// `I_k^ℓ : Z^{M_k^ℓ} → Z^{M_k^{ℓ+1}}`
    pub i: IntMatrix,
    /// `A_k^ℓ : Z^{M_k^ℓ} → Z^{M_{k+1}^{ℓ+1}}`
    pub a: IntMatrix,
    /// `δ_k^ℓ : Z^{M_k^ℓ} → Z^{M_{k+1}^ℓ}`
    pub delta: Option<IntMatrix>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassExport {
    pub contexts: Vec<String>,
    /// `null` when elided at the signature cap.
    pub signature: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelExport {
    pub level: usize,
    pub m: usize,
    pub classes: Vec<ClassExport>,
    /// `m_sets[k]` = `M_k^ℓ`, zero-based class indices.
    pub m_sets: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StepExport {
    pub level: usize,
    pub i: IntMatrix,
    pub a: Vec<IntMatrix>,
    pub a_sum: IntMatrix,
    pub b: IntMatrix,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainExport {
    pub alphabet: Vec<String>,
    pub m: Vec<usize>,
    pub stabilization: Stabilization,
    pub levels: Vec<LevelExport>,
    pub steps: Vec<StepExport>,
}

/// The level-`ℓ` partition alone.
pub fn past_partition(p: &ShiftPresentation, l: usize, caps: &Caps) -> Result<PartitionLevel> {
    let chain = PartitionChain::build(p, l.max(1), caps)?;
    Ok(chain.levels[l].clone())
}
