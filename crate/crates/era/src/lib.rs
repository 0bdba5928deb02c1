//! era — flow-sensitive analysis of equality relationships between program
//! terms, for a small Modula-flavoured imperative language (IMP-ERA).
//!
//! Abstract computation states are grammars whose nonterminals are classes of
//! equal terms. The analyzer propagates these states through a desugared core
//! program, intersecting at joins, widening at loop heads, and harvesting
//! diagnostics both during iteration ("+" findings) and from the fixpoint
//! ("−" findings). A concrete collecting-semantics interpreter serves as the
//! ground-truth oracle for soundness and for checking optimizations.

pub mod access;
pub mod complete;
pub mod coreir;
pub mod diag;
pub mod engine;
pub mod gen;
pub mod oracle;
pub mod report;
pub mod span;
pub mod state;
pub mod syntax;
pub mod term;
pub mod transform;
pub mod value;
pub mod widen;
