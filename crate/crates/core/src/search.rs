//! Limits shared by the anytime solvers.

use core::fmt;

/// Node and interrupt limits for an anytime search.
///
/// `max_nodes` is checked at every expansion. `interrupt` is polled every
/// [`Limits::POLL_INTERVAL`] expansions; the std side uses it for wall-clock
/// budgets.
#[derive(Clone, Copy, Default)]
pub struct Limits<'a> {
    pub max_nodes: Option<u64>,
    pub interrupt: Option<&'a dyn Fn() -> bool>,
}

impl fmt::Debug for Limits<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Limits")
            .field("max_nodes", &self.max_nodes)
            .field("interrupt", &self.interrupt.is_some())
            .finish()
    }
}

impl<'a> Limits<'a> {
    pub const POLL_INTERVAL: u64 = 256;

    pub const fn unlimited() -> Self {
        Limits {
            max_nodes: None,
            interrupt: None,
        }
    }

    pub const fn nodes(max: u64) -> Self {
        Limits {
            max_nodes: Some(max),
            interrupt: None,
        }
    }

    /// True once `expanded` nodes exhaust the budget.
    pub fn exhausted(&self, expanded: u64) -> bool {
        if let Some(max) = self.max_nodes {
            if expanded > max {
                return true;
            }
        }
        match self.interrupt {
            Some(stop) if expanded.is_multiple_of(Self::POLL_INTERVAL) => stop(),
            _ => false,
        }
    }
}
