//! Concrete syntax and shared vocabulary.
//!
//! Instruction sequences are written in an ASCII notation:
//!
//! ```text
//! seq   := item (";" item)*        item := atom "*"?     atom := prim | "(" seq ")"
//! prim  := "!" | "#" nat | ("+"|"-")? basic
//! basic := focus "." func "/" func | ident
//! focus := ident (":" nat)?        func := "0" | "1" | "i" | "c"
//! ```
//!
//! Concatenation is right-associative, so `a;b;c` is `a;(b;c)`.

mod family;
mod parser;
mod table;

use std::fmt;

pub use family::{FamilyTerm, RegisterContent};
pub use parser::{parse_family, parse_term, ParseError, ParseErrorKind};
pub use table::{bits_of, FunctionTable, TableError, MAX_TABLE_INPUTS};

/// One of the four unary Boolean functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UnaryFn {
    /// Constant false.
    F0,
    /// Constant true.
    T1,
    /// Identity.
    Id,
    /// Complement.
    Cm,
}

impl UnaryFn {
    pub const ALL: [UnaryFn; 4] = [UnaryFn::F0, UnaryFn::T1, UnaryFn::Id, UnaryFn::Cm];

    pub fn eval(self, b: bool) -> bool {
        match self {
            UnaryFn::F0 => false,
            UnaryFn::T1 => true,
            UnaryFn::Id => b,
            UnaryFn::Cm => !b,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            UnaryFn::F0 => '0',
            UnaryFn::T1 => '1',
            UnaryFn::Id => 'i',
            UnaryFn::Cm => 'c',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c {
            '0' => Some(UnaryFn::F0),
            '1' => Some(UnaryFn::T1),
            'i' => Some(UnaryFn::Id),
            'c' => Some(UnaryFn::Cm),
            _ => None,
        }
    }
}

/// Name of a Boolean register, e.g. `in:3` or a bare `f`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Focus {
    name: String,
    index: Option<u32>,
}

impl Focus {
    pub fn named(name: impl Into<String>) -> Self {
        Focus {
            name: name.into(),
            index: None,
        }
    }

    /// Panics if `index` is zero.
    pub fn indexed(name: impl Into<String>, index: u32) -> Self {
        assert!(index >= 1, "focus indices start at 1");
        Focus {
            name: name.into(),
            index: Some(index),
        }
    }

    pub fn input(i: u32) -> Self {
        Focus::indexed("in", i)
    }

    pub fn output(i: u32) -> Self {
        Focus::indexed("out", i)
    }

    pub fn aux(i: u32) -> Self {
        Focus::indexed("aux", i)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn index(&self) -> Option<u32> {
        self.index
    }
}

impl fmt::Display for Focus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index {
            Some(i) => write!(f, "{}:{}", self.name, i),
            None => f.write_str(&self.name),
        }
    }
}

/// `f.p/q`: reply `p(b)` and leave `q(b)` in register `f`, where `b` is its old content.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RegisterOp {
    pub focus: Focus,
    pub reply: UnaryFn,
    pub effect: UnaryFn,
}

impl RegisterOp {
    pub fn new(focus: Focus, reply: UnaryFn, effect: UnaryFn) -> Self {
        RegisterOp {
            focus,
            reply,
            effect,
        }
    }

    /// `0/0`, `1/1` and `i/i`.
    pub fn is_core(&self) -> bool {
        matches!(
            (self.reply, self.effect),
            (UnaryFn::F0, UnaryFn::F0) | (UnaryFn::T1, UnaryFn::T1) | (UnaryFn::Id, UnaryFn::Id)
        )
    }
}

impl fmt::Display for RegisterOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}.{}/{}",
            self.focus,
            self.reply.symbol(),
            self.effect.symbol()
        )
    }
}

/// A basic instruction: either an uninterpreted name or a register operation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasicInstruction {
    Abstract(String),
    Register(RegisterOp),
}

impl BasicInstruction {
    pub fn named(name: impl Into<String>) -> Self {
        BasicInstruction::Abstract(name.into())
    }

    pub fn register(focus: Focus, reply: UnaryFn, effect: UnaryFn) -> Self {
        BasicInstruction::Register(RegisterOp::new(focus, reply, effect))
    }

    pub fn as_register(&self) -> Option<&RegisterOp> {
        match self {
            BasicInstruction::Register(op) => Some(op),
            BasicInstruction::Abstract(_) => None,
        }
    }
}

impl fmt::Display for BasicInstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasicInstruction::Abstract(name) => f.write_str(name),
            BasicInstruction::Register(op) => op.fmt(f),
        }
    }
}

/// Primitive instruction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Instruction {
    Plain(BasicInstruction),
    PosTest(BasicInstruction),
    NegTest(BasicInstruction),
    Jump(u64),
    Halt,
}

impl Instruction {
    pub fn basic(&self) -> Option<&BasicInstruction> {
        match self {
            Instruction::Plain(b) | Instruction::PosTest(b) | Instruction::NegTest(b) => Some(b),
            Instruction::Jump(_) | Instruction::Halt => None,
        }
    }

    pub fn jump_literal(&self) -> Option<u64> {
        match self {
            Instruction::Jump(l) => Some(*l),
            _ => None,
        }
    }
}

impl fmt::Display for Instruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instruction::Plain(b) => write!(f, "{b}"),
            Instruction::PosTest(b) => write!(f, "+{b}"),
            Instruction::NegTest(b) => write!(f, "-{b}"),
            Instruction::Jump(l) => write!(f, "#{l}"),
            Instruction::Halt => f.write_str("!"),
        }
    }
}

/// Closed instruction sequence term.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Instr(Instruction),
    Concat(Box<Term>, Box<Term>),
    Repeat(Box<Term>),
}

impl Term {
    pub fn instr(i: Instruction) -> Self {
        Term::Instr(i)
    }

    pub fn concat(left: Term, right: Term) -> Self {
        Term::Concat(Box::new(left), Box::new(right))
    }

    pub fn repeat(body: Term) -> Self {
        Term::Repeat(Box::new(body))
    }

    /// Right-nested concatenation of `items`; `None` when empty.
    pub fn sequence<I>(items: I) -> Option<Term>
    where
        I: IntoIterator<Item = Term>,
        I::IntoIter: DoubleEndedIterator,
    {
        items
            .into_iter()
            .rev()
            .reduce(|acc, item| Term::concat(item, acc))
    }

    /// Right-nested concatenation of the given instructions.
    pub fn from_instructions<I>(instrs: I) -> Option<Term>
    where
        I: IntoIterator<Item = Instruction>,
        I::IntoIter: DoubleEndedIterator,
    {
        Term::sequence(instrs.into_iter().map(Term::Instr))
    }

    /// Leaves in left-to-right order.
    pub fn leaves(&self) -> Vec<&Instruction> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a Instruction>) {
        match self {
            Term::Instr(i) => out.push(i),
            Term::Concat(l, r) => {
                l.collect_leaves(out);
                r.collect_leaves(out);
            }
            Term::Repeat(b) => b.collect_leaves(out),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Term::Instr(_) => 1,
            Term::Concat(l, r) => l.leaf_count() + r.leaf_count(),
            Term::Repeat(b) => b.leaf_count(),
        }
    }

    pub fn is_repetition_free(&self) -> bool {
        match self {
            Term::Instr(_) => true,
            Term::Concat(l, r) => l.is_repetition_free() && r.is_repetition_free(),
            Term::Repeat(_) => false,
        }
    }

    /// Largest jump literal occurring in the term (0 when there are no jumps).
    pub fn max_jump(&self) -> u64 {
        self.leaves()
            .into_iter()
            .filter_map(Instruction::jump_literal)
            .max()
            .unwrap_or(0)
    }

    fn fmt_atom(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Instr(i) => write!(f, "{i}"),
            _ => write!(f, "({self})"),
        }
    }

    fn fmt_item(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Instr(i) => write!(f, "{i}"),
            Term::Repeat(body) => {
                body.fmt_atom(f)?;
                f.write_str("*")
            }
            Term::Concat(..) => write!(f, "({self})"),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Concat(l, r) => {
                l.fmt_item(f)?;
                f.write_str(";")?;
                r.fmt(f)
            }
            _ => self.fmt_item(f),
        }
    }
}

impl std::str::FromStr for Term {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_term(s)
    }
}
