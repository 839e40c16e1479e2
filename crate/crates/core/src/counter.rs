//! Per-thread arithmetic meter.
//!
//! Every multiplication, addition, inversion and automorphism application in
//! [`FieldCtx`](crate::field::FieldCtx) bumps a thread-local counter. Wrapping a
//! computation in [`measure`] yields the operation counts of that computation
//! alone, so concurrent runs on different threads never see each other's
//! counts.

use std::cell::Cell;

use serde::{Deserialize, Serialize};

/// Operation counts in the extension field.
///
/// `mul` and `add` are the cost model used by the benchmark harness;
/// subtractions count as additions. Inversions and applications of the
/// automorphism or derivation are tracked separately.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpCounts {
    pub mul: u64,
    pub add: u64,
    pub inv: u64,
    pub aut: u64,
}

impl std::ops::Add for OpCounts {
    type Output = OpCounts;

    fn add(self, o: OpCounts) -> OpCounts {
        OpCounts {
            mul: self.mul + o.mul,
            add: self.add + o.add,
            inv: self.inv + o.inv,
            aut: self.aut + o.aut,
        }
    }
}

thread_local! {
    static COUNTS: Cell<OpCounts> = Cell::new(OpCounts::default());
    static FAULT: Cell<bool> = const { Cell::new(false) };
}

#[inline]
pub(crate) fn bump_mul() {
    COUNTS.with(|c| {
        let mut v = c.get();
        v.mul += 1;
        c.set(v)
    });
}

#[inline]
pub(crate) fn bump_add() {
    COUNTS.with(|c| {
        let mut v = c.get();
        v.add += 1;
        c.set(v)
    });
}

#[inline]
pub(crate) fn bump_inv() {
    COUNTS.with(|c| {
        let mut v = c.get();
        v.inv += 1;
        c.set(v)
    });
}

#[inline]
pub(crate) fn bump_aut() {
    COUNTS.with(|c| {
        let mut v = c.get();
        v.aut += 1;
        c.set(v)
    });
}

#[inline]
pub(crate) fn fault_active() -> bool {
    FAULT.with(|f| f.get())
}

/// Counts of all field operations performed on this thread so far.
pub fn snapshot() -> OpCounts {
    COUNTS.with(|c| c.get())
}

/// Runs `f` and returns its result with the field operations it performed.
///
/// Nested calls work: the outer measurement includes the inner one.
pub fn measure<R>(f: impl FnOnce() -> R) -> (R, OpCounts) {
    let before = COUNTS.with(|c| c.replace(OpCounts::default()));
    let out = f();
    let inner = COUNTS.with(|c| c.replace(OpCounts::default()));
    COUNTS.with(|c| c.set(before + inner));
    (out, inner)
}

/// Runs `f` with deliberately corrupted field multiplication on this thread.
///
/// Only meant for checking that the self-test actually detects broken
/// arithmetic.
pub fn with_fault_injection<R>(f: impl FnOnce() -> R) -> R {
    let prev = FAULT.with(|c| c.replace(true));
    let out = f();
    FAULT.with(|c| c.set(prev));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_measurements_add_up() {
        let (_, outer) = measure(|| {
            bump_mul();
            let (_, inner) = measure(|| {
                bump_mul();
                bump_add();
            });
            assert_eq!(inner.mul, 1);
            assert_eq!(inner.add, 1);
        });
        assert_eq!(outer.mul, 2);
        assert_eq!(outer.add, 1);
    }

    #[test]
    fn fault_flag_is_scoped() {
        assert!(!fault_active());
        with_fault_injection(|| assert!(fault_active()));
        assert!(!fault_active());
    }
}
