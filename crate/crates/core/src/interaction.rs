//! Threads interacting with register families: use, apply and abstraction, plus a
//! direct interpreter for instruction sequences.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::registers::RegisterFamily;
use crate::syntax::{BasicInstruction, Instruction, RegisterContent, RegisterOp, Term};
use crate::thread::{minimize, Action, RegularThread, State, StateId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InteractionError {
    #[error("`{0}` is not a register instruction")]
    AbstractAction(String),
}

fn register_op(b: &BasicInstruction) -> Result<&RegisterOp, InteractionError> {
    b.as_register()
        .ok_or_else(|| InteractionError::AbstractAction(b.to_string()))
}

/// What a register instruction does to a family.
enum Effect {
    /// The focus is not bound.
    Unbound,
    /// The register is inoperative.
    Blocked,
    Reply(bool, RegisterFamily),
}

fn perform(op: &RegisterOp, u: &RegisterFamily) -> Effect {
    match u.get(&op.focus) {
        None => Effect::Unbound,
        Some(RegisterContent::Div) => Effect::Blocked,
        Some(c) => {
            let b = c.as_bool().expect("operative");
            let mut next = u.clone();
            next.set(
                op.focus.clone(),
                RegisterContent::from_bool(op.effect.eval(b)),
            );
            Effect::Reply(op.reply.eval(b), next)
        }
    }
}

type ProductKey = (StateId, RegisterFamily);

/// States of a thread paired with register families, numbered on first visit.
#[derive(Default)]
struct Product {
    ids: HashMap<ProductKey, StateId>,
    states: Vec<State>,
    queue: VecDeque<(StateId, ProductKey)>,
}

impl Product {
    fn intern(&mut self, key: ProductKey) -> StateId {
        if let Some(&id) = self.ids.get(&key) {
            return id;
        }
        let id = self.states.len();
        self.states.push(State::Dead);
        self.ids.insert(key.clone(), id);
        self.queue.push_back((id, key));
        id
    }
}

/// `t / u`: actions on bound foci are performed on `u` and become τ; the others stay.
pub fn use_family(
    t: &RegularThread,
    u: &RegisterFamily,
) -> Result<RegularThread, InteractionError> {
    let mut product = Product::default();
    let root = product.intern((t.root(), u.clone()));
    while let Some((id, (s, fam))) = product.queue.pop_front() {
        let state = match t.state(s) {
            State::Stop => State::Stop,
            State::Dead => State::Dead,
            State::Branch {
                action,
                on_true,
                on_false,
            } => match action {
                Action::Tau => {
                    let next = product.intern((*on_true, fam));
                    State::prefix(Action::Tau, next)
                }
                Action::Basic(b) => match perform(register_op(b)?, &fam) {
                    Effect::Unbound => {
                        let yes = product.intern((*on_true, fam.clone()));
                        let no = product.intern((*on_false, fam));
                        State::branch(action.clone(), yes, no)
                    }
                    Effect::Blocked => State::Dead,
                    Effect::Reply(reply, fam) => {
                        let succ = if reply { *on_true } else { *on_false };
                        let next = product.intern((succ, fam));
                        State::prefix(Action::Tau, next)
                    }
                },
            },
        };
        product.states[id] = state;
    }
    let thread = RegularThread::new(product.states, root).expect("interned ids are in range");
    Ok(minimize(&thread))
}

/// `t • u`: the family left when `t` terminates on `u`, or the empty family when it
/// becomes inactive, touches an unbound or inoperative focus, or runs forever.
pub fn apply(t: &RegularThread, u: &RegisterFamily) -> Result<RegisterFamily, InteractionError> {
    let mut seen = HashSet::new();
    let mut s = t.root();
    let mut fam = u.clone();
    loop {
        if !seen.insert((s, fam.clone())) {
            return Ok(RegisterFamily::empty());
        }
        match t.state(s) {
            State::Stop => return Ok(fam),
            State::Dead => return Ok(RegisterFamily::empty()),
            State::Branch {
                action,
                on_true,
                on_false,
            } => match action {
                Action::Tau => s = *on_true,
                Action::Basic(b) => match perform(register_op(b)?, &fam) {
                    Effect::Unbound | Effect::Blocked => return Ok(RegisterFamily::empty()),
                    Effect::Reply(reply, next) => {
                        s = if reply { *on_true } else { *on_false };
                        fam = next;
                    }
                },
            },
        }
    }
}

/// Removes every τ step; a state that can only do τ forever becomes inaction.
pub fn abstract_tau(t: &RegularThread) -> RegularThread {
    let n = t.states().len();
    let dead = n;
    let mut target: Vec<Option<StateId>> = vec![None; n];
    for start in 0..n {
        if target[start].is_some() {
            continue;
        }
        let mut path = Vec::new();
        let mut on_path = HashSet::new();
        let mut at = start;
        let end = loop {
            if let Some(known) = target[at] {
                break known;
            }
            match t.state(at) {
                State::Branch {
                    action: Action::Tau,
                    on_true,
                    ..
                } => {
                    if !on_path.insert(at) {
                        break dead;
                    }
                    path.push(at);
                    at = *on_true;
                }
                _ => break at,
            }
        };
        for p in path {
            target[p] = Some(end);
        }
        target[start].get_or_insert(end);
    }
    let resolve = |s: StateId| target[s].expect("every state was resolved");
    let mut states: Vec<State> = t
        .states()
        .iter()
        .map(|s| match s {
            State::Branch {
                action: Action::Tau,
                ..
            } => State::Dead,
            State::Branch {
                action,
                on_true,
                on_false,
            } => State::branch(action.clone(), resolve(*on_true), resolve(*on_false)),
            other => other.clone(),
        })
        .collect();
    states.push(State::Dead);
    let thread = RegularThread::new(states, resolve(t.root())).expect("targets are in range");
    minimize(&thread)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Terminated,
    Inactive,
    FuelExhausted,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Terminated => "terminated",
            Outcome::Inactive => "inactive",
            Outcome::FuelExhausted => "fuel exhausted",
        })
    }
}

/// Number of instructions in the expansion of `t`; `None` when infinite.
fn expansion_len(t: &Term) -> Option<u128> {
    match t {
        Term::Instr(_) => Some(1),
        Term::Concat(l, r) => Some(expansion_len(l)? + expansion_len(r)?),
        Term::Repeat(_) => None,
    }
}

/// Instruction at `pos` of the expansion of `t`, read straight off the term.
fn instruction_at(t: &Term, pos: u128) -> Option<&Instruction> {
    match t {
        Term::Instr(i) => (pos == 0).then_some(i),
        Term::Concat(l, r) => match expansion_len(l) {
            Some(n) if pos >= n => instruction_at(r, pos - n),
            _ => instruction_at(l, pos),
        },
        Term::Repeat(body) => match expansion_len(body) {
            Some(n) => instruction_at(body, pos % n),
            None => instruction_at(body, pos),
        },
    }
}

/// Runs `t` on `u` one instruction at a time, for at most `fuel` instructions.
///
/// Inaction, including touching an unbound or inoperative register, yields the empty
/// family; running out of fuel yields the family as it was at that point.
pub fn simulate(
    t: &Term,
    u: &RegisterFamily,
    fuel: u64,
) -> Result<(Outcome, RegisterFamily), InteractionError> {
    let mut pc: u128 = 0;
    let mut fam = u.clone();
    for _ in 0..fuel {
        let Some(instr) = instruction_at(t, pc) else {
            return Ok((Outcome::Inactive, RegisterFamily::empty()));
        };
        let (b, on_true, on_false) = match instr {
            Instruction::Halt => return Ok((Outcome::Terminated, fam)),
            Instruction::Jump(0) => return Ok((Outcome::Inactive, RegisterFamily::empty())),
            Instruction::Jump(l) => {
                pc += *l as u128;
                continue;
            }
            Instruction::Plain(b) => (b, 1, 1),
            Instruction::PosTest(b) => (b, 1, 2),
            Instruction::NegTest(b) => (b, 2, 1),
        };
        match perform(register_op(b)?, &fam) {
            Effect::Unbound | Effect::Blocked => {
                return Ok((Outcome::Inactive, RegisterFamily::empty()))
            }
            Effect::Reply(reply, next) => {
                fam = next;
                pc += if reply { on_true } else { on_false };
            }
        }
    }
    Ok((Outcome::FuelExhausted, fam))
}
