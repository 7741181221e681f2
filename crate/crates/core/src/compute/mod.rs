//! Instruction sequences computing partial functions on bit strings.
//!
//! A program computes `F : B^n -> B^m` when, for every input, using the family that holds
//! the input bits in `in:1..n` and false in `aux:1..k`, and then applying the result to
//! the family with false in `out:1..m`, yields the output bits in `out:1..m` where `F`
//! is defined and the empty family where it is not.

mod search;
mod translate;

use std::fmt;

use thiserror::Error;

use crate::extraction::extract;
use crate::interaction::{apply, use_family, InteractionError};
use crate::registers::RegisterFamily;
use crate::syntax::{
    bits_of, BasicInstruction, Focus, FunctionTable, Instruction, RegisterContent, Term, UnaryFn,
};
use crate::thread::RegularThread;

pub use search::{search_exact_len, search_shortest, search_shortest_with, SearchOptions};
pub use translate::{
    core_block, restrict_to_core, run_block, translate_blocks, BlockExit, BlockInstr, Kind,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComputeError {
    #[error("the program contains a repetition")]
    Repetition,
    #[error("focus `{0}` is not one of in:1..n, out:1..m, aux:1..k")]
    ForeignFocus(String),
    #[error("auxiliary register `{focus}` is beyond aux:{k}")]
    AuxOutOfRange { focus: String, k: usize },
    #[error("`{0}` is not a register instruction")]
    AbstractInstruction(String),
}

impl From<InteractionError> for ComputeError {
    fn from(e: InteractionError) -> Self {
        match e {
            InteractionError::AbstractAction(a) => ComputeError::AbstractInstruction(a),
        }
    }
}

/// `n` inputs, `m` outputs and `k` auxiliary registers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct IoConvention {
    pub n: usize,
    pub m: usize,
    pub k: usize,
}

impl IoConvention {
    pub fn new(n: usize, m: usize, k: usize) -> Self {
        IoConvention { n, m, k }
    }

    /// Smallest convention admitting every focus occurring in `terms`.
    pub fn infer<'a>(terms: impl IntoIterator<Item = &'a Term>) -> Result<Self, ComputeError> {
        let mut conv = IoConvention::default();
        for t in terms {
            for b in t.leaves().into_iter().filter_map(Instruction::basic) {
                let focus = register_focus(b)?;
                let (role, i) = role_of(focus)?;
                let slot = match role {
                    Role::In => &mut conv.n,
                    Role::Out => &mut conv.m,
                    Role::Aux => &mut conv.k,
                };
                *slot = (*slot).max(i);
            }
        }
        Ok(conv)
    }

    /// Rejects repetitions and foci outside the convention.
    pub fn check(&self, t: &Term) -> Result<(), ComputeError> {
        if !t.is_repetition_free() {
            return Err(ComputeError::Repetition);
        }
        for b in t.leaves().into_iter().filter_map(Instruction::basic) {
            let focus = register_focus(b)?;
            let (role, i) = role_of(focus)?;
            match role {
                Role::In if i > self.n => return Err(foreign(focus)),
                Role::Out if i > self.m => return Err(foreign(focus)),
                Role::Aux if i > self.k => {
                    return Err(ComputeError::AuxOutOfRange {
                        focus: focus.to_string(),
                        k: self.k,
                    })
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// `in:1..n` holding `input` together with `aux:1..k` holding false.
    pub fn input_family(&self, input: &[bool]) -> RegisterFamily {
        assert_eq!(input.len(), self.n);
        let inputs = input
            .iter()
            .enumerate()
            .map(|(i, &b)| (Focus::input(i as u32 + 1), RegisterContent::from_bool(b)));
        let aux = (1..=self.k).map(|i| (Focus::aux(i as u32), RegisterContent::Zero));
        inputs.chain(aux).collect()
    }

    /// `out:1..m` holding `bits`.
    pub fn output_family(&self, bits: &[bool]) -> RegisterFamily {
        assert_eq!(bits.len(), self.m);
        bits.iter()
            .enumerate()
            .map(|(i, &b)| (Focus::output(i as u32 + 1), RegisterContent::from_bool(b)))
            .collect()
    }

    /// Every focus of the convention, inputs first.
    pub fn foci(&self) -> Vec<Focus> {
        let ins = (1..=self.n).map(|i| Focus::input(i as u32));
        let outs = (1..=self.m).map(|i| Focus::output(i as u32));
        let aux = (1..=self.k).map(|i| Focus::aux(i as u32));
        ins.chain(outs).chain(aux).collect()
    }
}

impl fmt::Display for IoConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} m={} k={}", self.n, self.m, self.k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Role {
    In,
    Out,
    Aux,
}

fn foreign(focus: &Focus) -> ComputeError {
    ComputeError::ForeignFocus(focus.to_string())
}

fn register_focus(b: &BasicInstruction) -> Result<&Focus, ComputeError> {
    b.as_register()
        .map(|op| &op.focus)
        .ok_or_else(|| ComputeError::AbstractInstruction(b.to_string()))
}

fn role_of(focus: &Focus) -> Result<(Role, usize), ComputeError> {
    let role = match focus.name() {
        "in" => Role::In,
        "out" => Role::Out,
        "aux" => Role::Aux,
        _ => return Err(foreign(focus)),
    };
    let index = focus.index().ok_or_else(|| foreign(focus))?;
    Ok((role, index as usize))
}

/// `(|t| / (inputs + aux)) • outputs` for the given input, with outputs all false.
fn run_definition(
    thread: &RegularThread,
    conv: &IoConvention,
    input: &[bool],
) -> Result<RegisterFamily, ComputeError> {
    let used = use_family(thread, &conv.input_family(input))?;
    Ok(apply(&used, &conv.output_family(&vec![false; conv.m]))?)
}

/// Whether `t` computes `f` with `k` auxiliary registers.
///
/// With no outputs a defined row and an undefined row both demand the empty family, so
/// every program computes every function with `m = 0`.
pub fn computes_check(t: &Term, f: &FunctionTable, k: usize) -> Result<bool, ComputeError> {
    let conv = IoConvention::new(f.inputs(), f.outputs(), k);
    conv.check(t)?;
    let thread = extract(t);
    for (input, value) in f.entries() {
        let expected = match value {
            Some(bits) => conv.output_family(bits),
            None => RegisterFamily::empty(),
        };
        if run_definition(&thread, &conv, &input)? != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The function `t` computes under `conv`, row by row.
///
/// A row is undefined when the definition yields the empty family. With `m = 0` this
/// makes every row undefined (see [`computes_check`]).
pub fn computed_table(t: &Term, conv: &IoConvention) -> Result<FunctionTable, ComputeError> {
    conv.check(t)?;
    let thread = extract(t);
    let rows = (0..1usize << conv.n)
        .map(|i| {
            let out = run_definition(&thread, conv, &bits_of(i, conv.n))?;
            if out.is_empty() {
                return Ok(None);
            }
            let bits = (1..=conv.m)
                .map(|j| {
                    out.get(&Focus::output(j as u32))
                        .and_then(RegisterContent::as_bool)
                        .expect("apply keeps the output family's foci and contents")
                })
                .collect();
            Ok(Some(bits))
        })
        .collect::<Result<Vec<_>, ComputeError>>()?;
    Ok(FunctionTable::new(conv.n, conv.m, rows).expect("rows have the convention's widths"))
}

/// Both programs compute the same function under `conv`.
pub fn functionally_equivalent(
    a: &Term,
    b: &Term,
    conv: &IoConvention,
) -> Result<bool, ComputeError> {
    Ok(computed_table(a, conv)? == computed_table(b, conv)?)
}

fn core(focus: Focus, op: UnaryFn) -> BasicInstruction {
    BasicInstruction::register(focus, op, op)
}

/// A decision tree over the inputs using only `0/0`, `1/1` and `i/i`.
///
/// Each node is `-in:i.i/i ; #(|T|+1) ; T ; F`, or `+in:i.i/i ; T ; F` (`-in:i.i/i ; F ; T`)
/// when `T` (`F`) is a single `!` or `#0`. A defined leaf sets the true output bits and
/// terminates, an undefined leaf is `#0`. Nodes whose subtrees coincide are dropped.
pub fn compile_table(f: &FunctionTable) -> Term {
    fn node(depth: usize, n: usize, rows: &[Option<Vec<bool>>]) -> Vec<Instruction> {
        if depth == n {
            return match &rows[0] {
                None => vec![Instruction::Jump(0)],
                Some(bits) => bits
                    .iter()
                    .enumerate()
                    .filter(|(_, &b)| b)
                    .map(|(j, _)| {
                        Instruction::Plain(core(Focus::output(j as u32 + 1), UnaryFn::T1))
                    })
                    .chain([Instruction::Halt])
                    .collect(),
            };
        }
        let (zero, one) = rows.split_at(rows.len() / 2);
        let on_true = node(depth + 1, n, one);
        let on_false = node(depth + 1, n, zero);
        if on_true == on_false {
            return on_true;
        }
        let read = core(Focus::input(depth as u32 + 1), UnaryFn::Id);
        let (mut code, rest) = match (&on_true[..], &on_false[..]) {
            ([single], _) => (vec![Instruction::PosTest(read), single.clone()], on_false),
            (_, [single]) => (vec![Instruction::NegTest(read), single.clone()], on_true),
            _ => {
                let skip = Instruction::Jump(on_true.len() as u64 + 1);
                let mut code = vec![Instruction::NegTest(read), skip];
                code.extend(on_true);
                (code, on_false)
            }
        };
        code.extend(rest);
        code
    }
    Term::from_instructions(node(0, f.inputs(), f.rows())).expect("every leaf is nonempty")
}
