//! Live-cell accounting for dynamic-programming buffers.
//!
//! Every DP table or row allocated by this crate goes through [`Cells`],
//! which registers its length with a thread-local counter for as long as it
//! is alive. [`measure`] reports the peak number of simultaneously live
//! cells while a closure runs, which is how the space bounds of the
//! linear-space variants are checked.

use std::cell::Cell;
use std::ops::{Deref, DerefMut};

thread_local! {
    static LIVE: Cell<usize> = const { Cell::new(0) };
    static PEAK: Cell<usize> = const { Cell::new(0) };
}

fn acquire(n: usize) {
    LIVE.with(|live| {
        let now = live.get() + n;
        live.set(now);
        PEAK.with(|peak| {
            if now > peak.get() {
                peak.set(now);
            }
        });
    });
}

fn release(n: usize) {
    LIVE.with(|live| live.set(live.get() - n));
}

/// Runs `f` and returns its result together with the peak number of DP
/// cells that were live at the same time on this thread during the call.
/// Cells that were already live before the call are not counted.
pub fn measure<R>(f: impl FnOnce() -> R) -> (R, usize) {
    let baseline = LIVE.with(Cell::get);
    let saved_peak = PEAK.with(|p| p.replace(baseline));
    let out = f();
    let peak = PEAK.with(|p| p.replace(saved_peak.max(p.get())));
    (out, peak - baseline)
}

/// A heap buffer whose length is charged to the live-cell counter.
#[derive(Debug)]
pub(crate) struct Cells<T> {
    buf: Vec<T>,
    charged: usize,
}

impl<T: Clone> Cells<T> {
    pub(crate) fn new(len: usize, fill: T) -> Self {
        acquire(len);
        Cells {
            buf: vec![fill; len],
            charged: len,
        }
    }
}

impl<T> Cells<T> {
    /// Hands the buffer to the caller; it stops counting as live DP storage.
    pub(crate) fn into_vec(mut self) -> Vec<T> {
        release(std::mem::take(&mut self.charged));
        std::mem::take(&mut self.buf)
    }
}

impl<T> Drop for Cells<T> {
    fn drop(&mut self) {
        release(self.charged);
    }
}

impl<T> Deref for Cells<T> {
    type Target = [T];
    fn deref(&self) -> &[T] {
        &self.buf
    }
}

impl<T> DerefMut for Cells<T> {
    fn deref_mut(&mut self) -> &mut [T] {
        &mut self.buf
    }
}
