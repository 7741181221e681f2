//! Regular threads: finite rooted behaviour graphs built from termination, inaction
//! and postconditional composition.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::syntax::BasicInstruction;

pub type StateId = usize;

/// A basic action, or the internal action τ (rendered `tau`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Action {
    Tau,
    Basic(BasicInstruction),
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Action::Tau => f.write_str("tau"),
            Action::Basic(b) => b.fmt(f),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum State {
    Stop,
    Dead,
    /// Perform `action`, continue with `on_true` on reply true and `on_false` otherwise.
    Branch {
        action: Action,
        on_true: StateId,
        on_false: StateId,
    },
}

impl State {
    pub fn branch(action: Action, on_true: StateId, on_false: StateId) -> Self {
        State::Branch {
            action,
            on_true,
            on_false,
        }
    }

    /// `action . next`
    pub fn prefix(action: Action, next: StateId) -> Self {
        State::branch(action, next, next)
    }

    fn successors(&self) -> Option<(StateId, StateId)> {
        match self {
            State::Branch {
                on_true, on_false, ..
            } => Some((*on_true, *on_false)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThreadError {
    #[error("a thread needs at least one state")]
    NoStates,
    #[error("root {0} is not a state")]
    BadRoot(StateId),
    #[error("state {state} refers to missing state {target}")]
    Dangling { state: StateId, target: StateId },
}

/// A thread given by finitely many recursion equations, one per state.
///
/// τ always replies true, so every τ-branch is stored with both successors equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RegularThread {
    states: Vec<State>,
    root: StateId,
}

impl RegularThread {
    pub fn new(mut states: Vec<State>, root: StateId) -> Result<Self, ThreadError> {
        if states.is_empty() {
            return Err(ThreadError::NoStates);
        }
        if root >= states.len() {
            return Err(ThreadError::BadRoot(root));
        }
        let n = states.len();
        for (id, state) in states.iter_mut().enumerate() {
            if let State::Branch {
                action,
                on_true,
                on_false,
            } = state
            {
                for target in [*on_true, *on_false] {
                    if target >= n {
                        return Err(ThreadError::Dangling { state: id, target });
                    }
                }
                if *action == Action::Tau {
                    *on_false = *on_true;
                }
            }
        }
        Ok(RegularThread { states, root })
    }

    pub fn stop() -> Self {
        RegularThread {
            states: vec![State::Stop],
            root: 0,
        }
    }

    pub fn dead() -> Self {
        RegularThread {
            states: vec![State::Dead],
            root: 0,
        }
    }

    /// `on_true <action> on_false` as a fresh root over copies of both threads.
    pub fn branch(action: Action, on_true: &RegularThread, on_false: &RegularThread) -> Self {
        let mut states = vec![State::Dead];
        let t_root = append_shifted(&mut states, on_true);
        let f_root = append_shifted(&mut states, on_false);
        states[0] = State::branch(action, t_root, f_root);
        RegularThread::new(states, 0).expect("successors are in range")
    }

    /// `action . next`
    pub fn prefixed(action: Action, next: &RegularThread) -> Self {
        RegularThread::branch(action, next, next)
    }

    pub fn root(&self) -> StateId {
        self.root
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn state(&self, id: StateId) -> &State {
        &self.states[id]
    }

    pub fn root_state(&self) -> &State {
        &self.states[self.root]
    }

    /// States reachable from the root, in breadth-first order.
    pub fn reachable(&self) -> Vec<StateId> {
        let mut seen = vec![false; self.states.len()];
        let mut order = Vec::new();
        let mut queue = VecDeque::from([self.root]);
        seen[self.root] = true;
        while let Some(s) = queue.pop_front() {
            order.push(s);
            if let Some((t, f)) = self.states[s].successors() {
                for next in [t, f] {
                    if !seen[next] {
                        seen[next] = true;
                        queue.push_back(next);
                    }
                }
            }
        }
        order
    }

    /// Whether the reachable part has no cycles, i.e. the thread is finite.
    pub fn is_finite(&self) -> bool {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Active,
            Done,
        }
        let mut marks = vec![Mark::New; self.states.len()];
        let mut stack = vec![(self.root, false)];
        while let Some((s, leaving)) = stack.pop() {
            if leaving {
                marks[s] = Mark::Done;
                continue;
            }
            match marks[s] {
                Mark::Done => continue,
                Mark::Active => return false,
                Mark::New => {}
            }
            marks[s] = Mark::Active;
            stack.push((s, true));
            if let Some((t, f)) = self.states[s].successors() {
                for next in [t, f] {
                    match marks[next] {
                        Mark::Active => return false,
                        Mark::New => stack.push((next, false)),
                        Mark::Done => {}
                    }
                }
            }
        }
        true
    }

    /// Actions on reachable branches.
    pub fn actions(&self) -> impl Iterator<Item = &Action> + '_ {
        self.reachable()
            .into_iter()
            .filter_map(move |s| match &self.states[s] {
                State::Branch { action, .. } => Some(action),
                _ => None,
            })
    }
}

fn append_shifted(states: &mut Vec<State>, t: &RegularThread) -> StateId {
    let offset = states.len();
    states.extend(t.states.iter().map(|s| match s {
        State::Branch {
            action,
            on_true,
            on_false,
        } => State::branch(action.clone(), on_true + offset, on_false + offset),
        other => other.clone(),
    }));
    t.root + offset
}

/// Coarsest partition of `states` into bisimilar classes; returns the class of each state.
pub(crate) fn bisimulation_classes(states: &[State]) -> Vec<usize> {
    let mut initial: HashMap<&Action, usize> = HashMap::new();
    let mut kind_keys: Vec<(u8, Option<usize>)> = Vec::with_capacity(states.len());
    for s in states {
        kind_keys.push(match s {
            State::Stop => (0, None),
            State::Dead => (1, None),
            State::Branch { action, .. } => {
                let next = initial.len();
                (2, Some(*initial.entry(action).or_insert(next)))
            }
        });
    }
    let mut class = renumber(&kind_keys);
    let mut count = distinct(&class);
    loop {
        let keys: Vec<(usize, Option<(usize, usize)>)> = states
            .iter()
            .enumerate()
            .map(|(i, s)| (class[i], s.successors().map(|(t, f)| (class[t], class[f]))))
            .collect();
        let refined = renumber(&keys);
        let refined_count = distinct(&refined);
        if refined_count == count {
            return refined;
        }
        class = refined;
        count = refined_count;
    }
}

fn renumber<K: std::hash::Hash + Eq + Clone>(keys: &[K]) -> Vec<usize> {
    let mut ids: HashMap<K, usize> = HashMap::new();
    keys.iter()
        .map(|k| {
            let next = ids.len();
            *ids.entry(k.clone()).or_insert(next)
        })
        .collect()
}

fn distinct(classes: &[usize]) -> usize {
    classes.iter().copied().max().map_or(0, |m| m + 1)
}

/// Least-state thread bisimilar to `t`, numbered breadth-first from the root.
pub fn minimize(t: &RegularThread) -> RegularThread {
    let class = bisimulation_classes(&t.states);
    // representative state for each class reached from the root
    let mut number: HashMap<usize, StateId> = HashMap::new();
    let mut reps: Vec<StateId> = Vec::new();
    let mut queue = VecDeque::from([t.root]);
    number.insert(class[t.root], 0);
    reps.push(t.root);
    while let Some(s) = queue.pop_front() {
        if let Some((a, b)) = t.states[s].successors() {
            for next in [a, b] {
                if let std::collections::hash_map::Entry::Vacant(e) = number.entry(class[next]) {
                    e.insert(reps.len());
                    reps.push(next);
                    queue.push_back(next);
                }
            }
        }
    }
    let states = reps
        .iter()
        .map(|&s| match &t.states[s] {
            State::Branch {
                action,
                on_true,
                on_false,
            } => State::branch(
                action.clone(),
                number[&class[*on_true]],
                number[&class[*on_false]],
            ),
            other => other.clone(),
        })
        .collect();
    RegularThread { states, root: 0 }
}

/// Bisimilarity, decided by partition refinement over the disjoint union.
pub fn threads_equal(a: &RegularThread, b: &RegularThread) -> bool {
    let mut states = a.states.clone();
    let b_root = append_shifted(&mut states, b);
    let class = bisimulation_classes(&states);
    class[a.root] == class[b_root]
}

/// Approximation up to depth `n`: inaction after `n` actions unless terminated.
pub fn project(t: &RegularThread, n: usize) -> RegularThread {
    let mut states = Vec::new();
    let mut memo = HashMap::new();
    let root = project_into(t, t.root, n, &mut states, &mut memo);
    minimize(&RegularThread { states, root })
}

fn project_into(
    t: &RegularThread,
    s: StateId,
    depth: usize,
    out: &mut Vec<State>,
    memo: &mut HashMap<(StateId, usize), StateId>,
) -> StateId {
    if let Some(&id) = memo.get(&(s, depth)) {
        return id;
    }
    let state = match (&t.states[s], depth) {
        (_, 0) | (State::Dead, _) => State::Dead,
        (State::Stop, _) => State::Stop,
        (
            State::Branch {
                action,
                on_true,
                on_false,
            },
            d,
        ) => {
            let yes = project_into(t, *on_true, d - 1, out, memo);
            let no = project_into(t, *on_false, d - 1, out, memo);
            State::branch(action.clone(), yes, no)
        }
    };
    out.push(state);
    let id = out.len() - 1;
    memo.insert((s, depth), id);
    id
}

/// Recursion equations, one per reachable branching state; `S` and `D` appear inline.
impl fmt::Display for RegularThread {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order: Vec<StateId> = self
            .reachable()
            .into_iter()
            .filter(|&s| matches!(self.states[s], State::Branch { .. }))
            .collect();
        let names: HashMap<StateId, usize> =
            order.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let name = |s: StateId| match self.states[s] {
            State::Stop => "S".to_owned(),
            State::Dead => "D".to_owned(),
            State::Branch { .. } => format!("X{}", names[&s]),
        };
        if order.is_empty() {
            return write!(f, "X0 = {}", name(self.root));
        }
        for (i, &s) in order.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            if let State::Branch {
                action,
                on_true,
                on_false,
            } = &self.states[s]
            {
                write!(
                    f,
                    "X{i} = ({}) <{action}> ({})",
                    name(*on_true),
                    name(*on_false)
                )?;
            }
        }
        Ok(())
    }
}
