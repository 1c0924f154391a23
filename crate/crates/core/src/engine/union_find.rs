//! Flat, lock-free union-find over the rank space `[0, n!)`.
//!
//! Unions attach the larger root beneath the smaller, so the surviving root
//! of every class is its minimum rank. Every store strictly decreases a slot
//! value, which keeps the forest acyclic under concurrent updates and makes
//! the final flattened array independent of worker count and union order.

use std::sync::atomic::{AtomicU32, Ordering};

pub struct AtomicUnionFind {
    parent: Vec<AtomicU32>,
}

impl AtomicUnionFind {
    pub fn new(len: usize) -> Self {
        assert!(len <= u32::MAX as usize);
        let mut parent = Vec::with_capacity(len);
        for i in 0..len as u32 {
            parent.push(AtomicU32::new(i));
        }
        AtomicUnionFind { parent }
    }

    /// Find with path halving. Safe to call from any thread.
    pub fn find(&self, mut x: u32) -> u32 {
        loop {
            let p = self.parent[x as usize].load(Ordering::Relaxed);
            if p == x {
                return x;
            }
            let gp = self.parent[p as usize].load(Ordering::Relaxed);
            if gp != p {
                // Halving: losing the race just means another thread already
                // shortened this path.
                let _ = self.parent[x as usize].compare_exchange_weak(
                    p,
                    gp,
                    Ordering::Relaxed,
                    Ordering::Relaxed,
                );
            }
            x = gp;
        }
    }

    pub fn union(&self, a: u32, b: u32) {
        let mut x = a;
        let mut y = b;
        loop {
            let rx = self.find(x);
            let ry = self.find(y);
            if rx == ry {
                return;
            }
            let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
            if self.parent[hi as usize]
                .compare_exchange(hi, lo, Ordering::AcqRel, Ordering::Relaxed)
                .is_ok()
            {
                return;
            }
            // hi stopped being a root; retry from the merged trees.
            x = lo;
            y = hi;
        }
    }

    /// Flattens every slot to its class root (the minimum member) and hands
    /// back the plain array. Must be called after all unions have completed.
    pub fn into_canonical_roots(self) -> Vec<u32> {
        for i in 0..self.parent.len() {
            let root = self.find(i as u32);
            self.parent[i].store(root, Ordering::Relaxed);
        }
        let mut v = std::mem::ManuallyDrop::new(self.parent);
        let (ptr, len, cap) = (v.as_mut_ptr(), v.len(), v.capacity());
        // SAFETY: AtomicU32 has the same size, alignment, and bit validity
        // as u32, and we own the allocation.
        unsafe { Vec::from_raw_parts(ptr as *mut u32, len, cap) }
    }
}
