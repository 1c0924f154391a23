//! One checker per structural claim about the `{1234, 3412}` relation.
//!
//! Every checker is a pure function of its inputs and returns a
//! [`CheckReport`]: pass/fail, a minimal counterexample on failure, the
//! sampling seed when one was used, and elapsed wall time.

mod checks;
mod report;
mod tags;

pub use checks::{
    check_assembly, check_b_count, check_closed_form, check_creating_primary,
    check_leader_classes, check_parity, check_parity_moves, check_primary_classes,
    check_recurrence, closed_form_value, CheckKind, DEFAULT_MOVE_SAMPLES,
    DEFAULT_TRIPLE_SAMPLES,
};
pub use report::{CheckReport, Counterexample};
pub use tags::{tag_class, ClassTag};
