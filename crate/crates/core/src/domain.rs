//! Parameter intervals with excised neighbourhoods.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }
}

/// `[start, end]` minus a sorted set of disjoint closed excisions.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrimmedDomain {
    pub start: f64,
    pub end: f64,
    pub excised: Vec<Interval>,
}

impl TrimmedDomain {
    pub fn full(start: f64, end: f64) -> Self {
        Self {
            start,
            end,
            excised: Vec::new(),
        }
    }

    /// Adds an excision, clipped to the domain and merged with overlaps.
    pub fn excise(&mut self, cut: Interval) {
        let cut = Interval::new(cut.lo.max(self.start), cut.hi.min(self.end));
        if cut.lo > cut.hi {
            return;
        }
        let mut merged = cut;
        self.excised.retain(|iv| {
            if iv.hi < merged.lo || iv.lo > merged.hi {
                true
            } else {
                merged = Interval::new(iv.lo.min(merged.lo), iv.hi.max(merged.hi));
                false
            }
        });
        let at = self.excised.partition_point(|iv| iv.lo < merged.lo);
        self.excised.insert(at, merged);
    }

    pub fn excision_containing(&self, s: f64) -> Option<&Interval> {
        self.excised.iter().find(|iv| iv.contains(s))
    }

    pub fn contains(&self, s: f64) -> bool {
        s >= self.start && s <= self.end && self.excision_containing(s).is_none()
    }

    pub fn check(&self, s: f64) -> Result<()> {
        if !(s >= self.start && s <= self.end) {
            return Err(Error::OutOfDomain {
                s,
                s0: self.start,
                s1: self.end,
            });
        }
        if let Some(iv) = self.excision_containing(s) {
            return Err(Error::Trimmed {
                s,
                lo: iv.lo,
                hi: iv.hi,
            });
        }
        Ok(())
    }

    /// True when an excision meets the closed segment between `a` and `b`.
    pub fn separates(&self, a: f64, b: f64) -> bool {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        self.excised.iter().any(|iv| iv.lo <= hi && iv.hi >= lo)
    }

    /// Maximal untrimmed sub-intervals.
    pub fn pieces(&self) -> Vec<Interval> {
        let mut out = Vec::new();
        let mut cursor = self.start;
        for iv in &self.excised {
            if iv.lo > cursor {
                out.push(Interval::new(cursor, iv.lo));
            }
            cursor = cursor.max(iv.hi);
        }
        if cursor < self.end {
            out.push(Interval::new(cursor, self.end));
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        self.pieces().is_empty()
    }

    /// Moves a parameter out of an excision to the nearer usable edge.
    pub fn nearest_valid(&self, s: f64) -> Option<f64> {
        let s = s.clamp(self.start, self.end);
        match self.excision_containing(s) {
            None => Some(s),
            Some(iv) => {
                let below = (iv.lo > self.start).then_some(iv.lo);
                let above = (iv.hi < self.end).then_some(iv.hi);
                match (below, above) {
                    (Some(b), Some(a)) => Some(if s - b <= a - s { b } else { a }),
                    (b, a) => b.or(a),
                }
                .map(|edge| {
                    // nudge just outside the closed excision
                    let step = 1e-12 * (1.0 + edge.abs());
                    if edge <= iv.lo {
                        edge - step
                    } else {
                        edge + step
                    }
                })
            }
        }
    }
}
