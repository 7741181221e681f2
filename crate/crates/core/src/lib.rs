//! Single-pass instruction sequences, the threads they produce, and Boolean registers.
//!
//! The modules build on each other: [`syntax`] holds terms and their notation,
//! [`canonical`] normalizes terms, [`thread`] and [`extraction`] give behaviour,
//! [`registers`] and [`interaction`] let behaviour act on Boolean registers, and
//! [`compute`] relates programs to partial functions on bit strings.

pub mod canonical;
pub mod compute;
pub mod extraction;
pub mod interaction;
pub mod registers;
pub mod syntax;
pub mod thread;

pub use canonical::{
    instruction_sequence_congruent, structurally_congruent, to_first_canonical,
    to_second_canonical, CanonicalSeq,
};
pub use compute::{
    compile_table, computed_table, computes_check, functionally_equivalent, restrict_to_core,
    search_shortest, ComputeError, IoConvention,
};
pub use extraction::{
    behaviourally_congruent, behaviourally_equivalent, extract, synthesize_repetition,
};
pub use interaction::{abstract_tau, apply, simulate, use_family, InteractionError, Outcome};
pub use registers::{evaluate_family, RegisterFamily};
pub use syntax::{
    parse_family, parse_term, BasicInstruction, FamilyTerm, Focus, FunctionTable, Instruction,
    ParseError, RegisterContent, RegisterOp, Term, UnaryFn,
};
pub use thread::{minimize, project, threads_equal, Action, RegularThread, State, StateId};
