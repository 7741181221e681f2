//! Rewriting register programs so that only `0/0`, `1/1` and `i/i` occur.
//!
//! Each other register instruction becomes a block of at most four core instructions
//! that leaves the same register content and leaves the block through the same exit.
//! Blocks are longer than the instructions they replace, so every jump is relocated
//! through a map from old to new positions.

use crate::syntax::{BasicInstruction, Instruction, RegisterOp, Term, UnaryFn};

use super::{compile_table, computed_table, ComputeError, IoConvention};

/// How a basic instruction is used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Plain,
    Pos,
    Neg,
}

impl Kind {
    pub const ALL: [Kind; 3] = [Kind::Plain, Kind::Pos, Kind::Neg];

    pub fn wrap(self, b: BasicInstruction) -> Instruction {
        match self {
            Kind::Plain => Instruction::Plain(b),
            Kind::Pos => Instruction::PosTest(b),
            Kind::Neg => Instruction::NegTest(b),
        }
    }

    /// Whether control proceeds to the next instruction (rather than skipping it) on
    /// the given reply.
    pub fn proceeds(self, reply: bool) -> bool {
        match self {
            Kind::Plain => true,
            Kind::Pos => reply,
            Kind::Neg => !reply,
        }
    }
}

/// Where control leaves a translated block: where the original instruction would have
/// gone next, or to the instruction after that.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockExit {
    Next,
    Skip,
}

/// An instruction of a translated block; exits become jumps once positions are known.
/// Falling off the end of a block leaves through [`BlockExit::Next`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BlockInstr {
    Core(Instruction),
    Exit(BlockExit),
}

/// Which exit the original instruction takes, as a function of the old content `b`.
enum ExitRule {
    Always(BlockExit),
    NextIff(bool),
}

/// The core block standing for `kind` applied to `op`.
pub fn core_block(kind: Kind, op: &RegisterOp) -> Vec<BlockInstr> {
    use BlockExit::{Next, Skip};
    use BlockInstr::{Core, Exit};

    let f = &op.focus;
    let core = |k: Kind, g: UnaryFn| Core(k.wrap(BasicInstruction::register(f.clone(), g, g)));
    if op.is_core() {
        return vec![Core(kind.wrap(BasicInstruction::Register(op.clone())))];
    }
    let (read, zero, one) = (UnaryFn::Id, UnaryFn::F0, UnaryFn::T1);
    let next_on = |b: bool| kind.proceeds(op.reply.eval(b));
    let rule = match (next_on(false), next_on(true)) {
        (true, true) => ExitRule::Always(Next),
        (false, false) => ExitRule::Always(Skip),
        (_, on_true) => ExitRule::NextIff(on_true),
    };
    match (rule, op.effect) {
        (ExitRule::Always(exit), q) => {
            let mut block = match q {
                UnaryFn::Cm => vec![
                    core(Kind::Pos, read),
                    core(Kind::Pos, zero),
                    core(Kind::Plain, one),
                ],
                UnaryFn::Id if exit == Skip => return vec![Exit(Skip)],
                g => vec![core(Kind::Plain, g)],
            };
            if exit == Skip {
                block.push(Exit(Skip));
            }
            block
        }
        (ExitRule::NextIff(true), q) => match q {
            UnaryFn::F0 => vec![core(Kind::Neg, read), Exit(Skip), core(Kind::Plain, zero)],
            UnaryFn::T1 => vec![
                core(Kind::Pos, read),
                Exit(Next),
                core(Kind::Plain, one),
                Exit(Skip),
            ],
            UnaryFn::Id => vec![core(Kind::Neg, read), Exit(Skip)],
            UnaryFn::Cm => vec![
                core(Kind::Neg, read),
                core(Kind::Neg, one),
                core(Kind::Pos, zero),
                Exit(Skip),
            ],
        },
        (ExitRule::NextIff(false), q) => match q {
            UnaryFn::F0 => vec![
                core(Kind::Neg, read),
                Exit(Next),
                core(Kind::Plain, zero),
                Exit(Skip),
            ],
            UnaryFn::T1 => vec![core(Kind::Pos, read), Exit(Skip), core(Kind::Plain, one)],
            UnaryFn::Id => vec![core(Kind::Pos, read), Exit(Skip)],
            UnaryFn::Cm => vec![
                core(Kind::Pos, read),
                core(Kind::Pos, zero),
                core(Kind::Neg, one),
                Exit(Skip),
            ],
        },
    }
}

/// Runs a block on the content `b` of its register, entering at `entry`; returns the
/// final content and the exit taken. Every instruction of a block acts on one register.
///
/// `None` when control would land inside whatever follows the block.
pub fn run_block(block: &[BlockInstr], entry: usize, mut b: bool) -> Option<(bool, BlockExit)> {
    let mut pc = entry;
    loop {
        if pc == block.len() {
            return Some((b, BlockExit::Next));
        }
        if pc > block.len() {
            // a lone test skips over the end, as the instruction it replaces did
            return (block.len() == 1 && pc == 2).then_some((b, BlockExit::Skip));
        }
        let (kind, op) = match &block[pc] {
            BlockInstr::Exit(e) => return Some((b, *e)),
            BlockInstr::Core(Instruction::Plain(x)) => (Kind::Plain, x),
            BlockInstr::Core(Instruction::PosTest(x)) => (Kind::Pos, x),
            BlockInstr::Core(Instruction::NegTest(x)) => (Kind::Neg, x),
            BlockInstr::Core(other) => panic!("`{other}` does not occur in blocks"),
        };
        let op = op.as_register().expect("blocks hold register instructions");
        let reply = op.reply.eval(b);
        b = op.effect.eval(b);
        pc += if kind.proceeds(reply) { 1 } else { 2 };
    }
}

/// Whether control entering a block at its second instruction leaves it at once through
/// [`BlockExit::Next`] without touching the register, as a skip over the first
/// instruction of the block would require.
fn tolerates_skip_into(block: &[BlockInstr]) -> bool {
    block.len() <= 1
        || [false, true]
            .iter()
            .all(|&b| run_block(block, 1, b) == Some((b, BlockExit::Next)))
}

/// A test that skips lands on the second instruction of the next block; when that block
/// cannot take it, the test is negated and its skip made an explicit jump.
fn explicit_skip(kind: Kind, b: &BasicInstruction) -> Vec<BlockInstr> {
    let negated = match kind {
        Kind::Pos => Kind::Neg,
        Kind::Neg => Kind::Pos,
        Kind::Plain => return vec![BlockInstr::Core(kind.wrap(b.clone()))],
    };
    vec![
        BlockInstr::Core(negated.wrap(b.clone())),
        BlockInstr::Exit(BlockExit::Skip),
    ]
}

/// The replies an instruction can give, whatever its register holds.
fn possible_replies(op: &RegisterOp) -> &'static [bool] {
    match op.reply {
        UnaryFn::F0 => &[false],
        UnaryFn::T1 => &[true],
        UnaryFn::Id | UnaryFn::Cm => &[false, true],
    }
}

/// Positions control can reach from the start, taking constant replies into account.
fn reachable(code: &[(Kind, &RegisterOp)], old: &[&Instruction]) -> Vec<bool> {
    let mut seen = vec![false; old.len()];
    let mut todo = vec![0usize];
    let mut ops = code.iter();
    let op_at: Vec<Option<(Kind, &RegisterOp)>> = old
        .iter()
        .map(|i| {
            i.basic()
                .map(|_| *ops.next().expect("one entry per basic instruction"))
        })
        .collect();
    while let Some(pos) = todo.pop() {
        if pos >= old.len() || seen[pos] {
            continue;
        }
        seen[pos] = true;
        match (old[pos], op_at[pos]) {
            (Instruction::Jump(l), _) if *l > 0 => {
                if let Some(to) = usize::try_from(*l).ok().and_then(|l| pos.checked_add(l)) {
                    todo.push(to);
                }
            }
            (_, Some((kind, op))) => {
                for &reply in possible_replies(op) {
                    todo.push(pos + if kind.proceeds(reply) { 1 } else { 2 });
                }
            }
            _ => {}
        }
    }
    seen
}

/// Replaces every register instruction outside `0/0`, `1/1`, `i/i` by its core block and
/// relocates all jumps.
///
/// The result is functionally equivalent to `t` under `conv`. It is the block translation
/// of `t` (see [`translate_blocks`]) unless that exceeds `t` by more than three
/// instructions per replaced instruction; then the compiled table of the function `t`
/// computes is taken when it is shorter.
pub fn restrict_to_core(t: &Term, conv: &IoConvention) -> Result<Term, ComputeError> {
    conv.check(t)?;
    let translated = translate_blocks(t)?;
    let non_core = t
        .leaves()
        .iter()
        .filter_map(|i| i.basic().and_then(BasicInstruction::as_register))
        .filter(|op| !op.is_core())
        .count();
    if translated.leaf_count() <= t.leaf_count() + 3 * non_core {
        return Ok(translated);
    }
    let compiled = compile_table(&computed_table(t, conv)?);
    Ok(if compiled.leaf_count() < translated.leaf_count() {
        compiled
    } else {
        translated
    })
}

/// Block translation with relocated jumps.
///
/// Blocks grow by at most three instructions. A test that can skip gains one more
/// instruction when the block after it cannot be entered by that skip, so the result
/// can exceed the original length by up to four per replaced instruction. Unreachable
/// instructions become `#0`.
pub fn translate_blocks(t: &Term) -> Result<Term, ComputeError> {
    if !t.is_repetition_free() {
        return Err(ComputeError::Repetition);
    }
    let old: Vec<&Instruction> = t.leaves();
    let mut code = Vec::new();
    for instr in &old {
        let (kind, b) = match instr {
            Instruction::Plain(b) => (Kind::Plain, b),
            Instruction::PosTest(b) => (Kind::Pos, b),
            Instruction::NegTest(b) => (Kind::Neg, b),
            _ => continue,
        };
        let op = b
            .as_register()
            .ok_or_else(|| ComputeError::AbstractInstruction(b.to_string()))?;
        code.push((kind, op));
    }
    let live = reachable(&code, &old);
    let mut ops = code.iter();
    let mut blocks: Vec<Vec<BlockInstr>> = old
        .iter()
        .zip(&live)
        .map(|(instr, &live)| match instr.basic() {
            None => vec![BlockInstr::Core((*instr).clone())],
            Some(_) => {
                let &(kind, op) = ops.next().expect("one entry per basic instruction");
                if live || op.is_core() {
                    core_block(kind, op)
                } else {
                    vec![BlockInstr::Core(Instruction::Jump(0))]
                }
            }
        })
        .collect();
    for i in (0..blocks.len().saturating_sub(1)).rev() {
        let test = match &blocks[i][..] {
            [BlockInstr::Core(Instruction::PosTest(b))] => Some((Kind::Pos, b.clone())),
            [BlockInstr::Core(Instruction::NegTest(b))] => Some((Kind::Neg, b.clone())),
            _ => None,
        };
        let Some((kind, b)) = test else { continue };
        let op = b.as_register().expect("checked above");
        let may_skip = possible_replies(op).iter().any(|&r| !kind.proceeds(r));
        if live[i] && may_skip && !tolerates_skip_into(&blocks[i + 1]) {
            blocks[i] = explicit_skip(kind, &b);
        }
    }

    let mut start = Vec::with_capacity(old.len() + 1);
    let mut len = 0u64;
    for block in &blocks {
        start.push(len);
        len += block.len() as u64;
    }
    let old_len = old.len() as u128;
    let new_len = len as u128;
    // positions past the end keep their distance to it
    let relocate = |pos: u128| -> u128 {
        if pos < old_len {
            start[pos as usize] as u128
        } else {
            new_len + (pos - old_len)
        }
    };
    let literal = |from: u128, to: u128| u64::try_from(to - from).unwrap_or(u64::MAX);

    let mut out = Vec::with_capacity(len as usize);
    for (i, block) in blocks.iter().enumerate() {
        let base = start[i] as u128;
        for (offset, item) in block.iter().enumerate() {
            let at = base + offset as u128;
            let instr = match item {
                BlockInstr::Core(Instruction::Jump(l)) if *l > 0 => {
                    Instruction::Jump(literal(at, relocate(i as u128 + *l as u128)))
                }
                BlockInstr::Core(instr) => instr.clone(),
                BlockInstr::Exit(BlockExit::Next) => {
                    Instruction::Jump(literal(at, relocate(i as u128 + 1)))
                }
                BlockInstr::Exit(BlockExit::Skip) => {
                    Instruction::Jump(literal(at, relocate(i as u128 + 2)))
                }
            };
            out.push(instr);
        }
    }
    Ok(Term::from_instructions(out).expect("terms are nonempty"))
}
