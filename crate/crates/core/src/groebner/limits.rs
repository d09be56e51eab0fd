use std::cell::{Cell, RefCell};
use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Reduction-step budget and optional wall-clock limit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_steps: u64,
    pub timeout: Option<Duration>,
}

pub const DEFAULT_STEP_BUDGET: u64 = 10_000_000;

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_steps: DEFAULT_STEP_BUDGET,
            timeout: None,
        }
    }
}

struct Active {
    max: u64,
    used: u64,
    start: Instant,
    timeout: Option<Duration>,
}

thread_local! {
    static ACTIVE: RefCell<Option<Active>> = const { RefCell::new(None) };
    static PAIRS: Cell<u64> = const { Cell::new(0) };
    static STEPS: Cell<u64> = const { Cell::new(0) };
}

/// Work counters of the Buchberger engine on this thread.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EngineStats {
    pub s_pairs: u64,
    pub reduction_steps: u64,
}

pub fn engine_stats() -> EngineStats {
    EngineStats {
        s_pairs: PAIRS.with(|c| c.get()),
        reduction_steps: STEPS.with(|c| c.get()),
    }
}

pub fn reset_engine_stats() {
    PAIRS.with(|c| c.set(0));
    STEPS.with(|c| c.set(0));
}

pub(crate) fn count_pair() {
    PAIRS.with(|c| c.set(c.get() + 1));
}

/// Runs `f` with one shared budget for every computation it performs.
pub fn with_limits<T>(limits: Limits, f: impl FnOnce() -> T) -> T {
    let prev = ACTIVE.with(|a| {
        a.borrow_mut().replace(Active {
            max: limits.max_steps,
            used: 0,
            start: Instant::now(),
            timeout: limits.timeout,
        })
    });
    let out = f();
    ACTIVE.with(|a| *a.borrow_mut() = prev);
    out
}

/// Steps charged so far to the innermost active budget.
pub fn steps_used() -> u64 {
    ACTIVE.with(|a| a.borrow().as_ref().map(|x| x.used).unwrap_or(0))
}

/// Per-computation counter that defers to the shared budget when one is active.
pub(crate) struct Meter {
    local: u64,
    since_clock: u32,
}

impl Meter {
    pub fn new() -> Meter {
        Meter {
            local: 0,
            since_clock: 0,
        }
    }

    pub fn charge(&mut self, n: u64) -> Result<()> {
        STEPS.with(|c| c.set(c.get() + n));
        self.since_clock += 1;
        let check_clock = self.since_clock >= 256;
        if check_clock {
            self.since_clock = 0;
        }
        let shared = ACTIVE.with(|a| {
            let mut b = a.borrow_mut();
            match b.as_mut() {
                None => None,
                Some(act) => {
                    act.used += n;
                    if act.used > act.max {
                        return Some(Err(Error::ResourceLimit(format!(
                            "more than {} reduction steps",
                            act.max
                        ))));
                    }
                    if check_clock {
                        if let Some(t) = act.timeout {
                            if act.start.elapsed() > t {
                                return Some(Err(Error::Timeout(t)));
                            }
                        }
                    }
                    Some(Ok(()))
                }
            }
        });
        match shared {
            Some(r) => r,
            None => {
                self.local += n;
                if self.local > DEFAULT_STEP_BUDGET {
                    Err(Error::ResourceLimit(format!(
                        "more than {DEFAULT_STEP_BUDGET} reduction steps"
                    )))
                } else {
                    Ok(())
                }
            }
        }
    }
}
