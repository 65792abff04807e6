//! Heap instrumentation for the benchmark harness.
//!
//! [`TrackingAllocator`] wraps the system allocator and keeps process-wide
//! byte counters. A measurement window snapshots the counters, re-bases peak
//! tracking, and reads the deltas back out, giving the two memory decision
//! variables: net bytes allocated inside the window and the peak live bytes
//! the window added on top of the pre-existing heap.
//!
//! Install it in any binary that runs measurements:
//!
//! ```ignore
//! #[global_allocator]
//! static ALLOC: sortlab_core::bench::alloc::TrackingAllocator = TrackingAllocator::new();
//! ```

use std::alloc::{GlobalAlloc, Layout, System};
use std::sync::atomic::{AtomicI64, AtomicU64, Ordering};

static ALLOC_BYTES: AtomicU64 = AtomicU64::new(0);
static FREE_BYTES: AtomicU64 = AtomicU64::new(0);
static LIVE_BYTES: AtomicI64 = AtomicI64::new(0);
static WINDOW_BASE: AtomicI64 = AtomicI64::new(0);
static WINDOW_PEAK: AtomicI64 = AtomicI64::new(0);

/// Counting wrapper around [`System`]. Uses only atomics, so it is safe in
/// the global-allocator position (no TLS, no reentrancy).
pub struct TrackingAllocator;

impl TrackingAllocator {
    pub const fn new() -> Self {
        Self
    }
}

impl Default for TrackingAllocator {
    fn default() -> Self {
        Self::new()
    }
}

#[inline]
fn record_alloc(size: usize) {
    ALLOC_BYTES.fetch_add(size as u64, Ordering::Relaxed);
    let live = LIVE_BYTES.fetch_add(size as i64, Ordering::Relaxed) + size as i64;
    let delta = live - WINDOW_BASE.load(Ordering::Relaxed);
    WINDOW_PEAK.fetch_max(delta, Ordering::Relaxed);
}

#[inline]
fn record_dealloc(size: usize) {
    FREE_BYTES.fetch_add(size as u64, Ordering::Relaxed);
    LIVE_BYTES.fetch_sub(size as i64, Ordering::Relaxed);
}

unsafe impl GlobalAlloc for TrackingAllocator {
    unsafe fn alloc(&self, layout: Layout) -> *mut u8 {
        let ptr = System.alloc(layout);
        if !ptr.is_null() {
            record_alloc(layout.size());
        }
        ptr
    }

    unsafe fn dealloc(&self, ptr: *mut u8, layout: Layout) {
        System.dealloc(ptr, layout);
        record_dealloc(layout.size());
    }

    unsafe fn alloc_zeroed(&self, layout: Layout) -> *mut u8 {
        let ptr = System.alloc_zeroed(layout);
        if !ptr.is_null() {
            record_alloc(layout.size());
        }
        ptr
    }

    unsafe fn realloc(&self, ptr: *mut u8, layout: Layout, new_size: usize) -> *mut u8 {
        let new_ptr = System.realloc(ptr, layout, new_size);
        if !new_ptr.is_null() {
            // counted as alloc-then-free: both buffers briefly coexist
            record_alloc(new_size);
            record_dealloc(layout.size());
        }
        new_ptr
    }
}

/// Counter snapshot taken when a window opens.
#[derive(Debug, Clone, Copy)]
pub struct WindowStart {
    alloc: u64,
    free: u64,
}

/// Byte totals attributed to a closed window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WindowStats {
    /// Bytes allocated inside the window minus bytes freed inside it,
    /// clamped at zero.
    pub net_bytes: u64,
    /// Peak live bytes the window added on top of the heap level at open.
    pub peak_bytes: u64,
}

/// Opens a measurement window. Windows do not nest; the harness serializes
/// measurements, so only one window is ever open.
pub fn open_window() -> WindowStart {
    let live = LIVE_BYTES.load(Ordering::Relaxed);
    WINDOW_BASE.store(live, Ordering::Relaxed);
    WINDOW_PEAK.store(0, Ordering::Relaxed);
    WindowStart {
        alloc: ALLOC_BYTES.load(Ordering::Relaxed),
        free: FREE_BYTES.load(Ordering::Relaxed),
    }
}

/// Closes the window opened by `start` and returns its byte totals.
pub fn close_window(start: WindowStart) -> WindowStats {
    let allocated = ALLOC_BYTES.load(Ordering::Relaxed).wrapping_sub(start.alloc);
    let freed = FREE_BYTES.load(Ordering::Relaxed).wrapping_sub(start.free);
    WindowStats {
        net_bytes: allocated.saturating_sub(freed),
        peak_bytes: WINDOW_PEAK.load(Ordering::Relaxed).max(0) as u64,
    }
}

/// Probes whether a [`TrackingAllocator`] is installed as the global
/// allocator by making a small allocation and watching the counters move.
pub fn allocator_active() -> bool {
    let before = ALLOC_BYTES.load(Ordering::Relaxed);
    let probe = std::hint::black_box(Box::new(0u64));
    drop(std::hint::black_box(probe));
    ALLOC_BYTES.load(Ordering::Relaxed) != before
}
