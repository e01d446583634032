/// Closed, 1-based range of BWT rows `[sp..ep]`. Empty when `sp > ep`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub sp: usize,
    pub ep: usize,
}

impl Interval {
    #[inline]
    pub const fn new(sp: usize, ep: usize) -> Self {
        Interval { sp, ep }
    }

    /// The canonical empty interval.
    pub const EMPTY: Interval = Interval { sp: 1, ep: 0 };

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.sp > self.ep
    }

    #[inline]
    pub fn width(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            self.ep - self.sp + 1
        }
    }

    #[inline]
    pub fn contains(&self, other: &Interval) -> bool {
        self.sp <= other.sp && other.ep <= self.ep
    }

    #[inline]
    pub fn contains_row(&self, row: usize) -> bool {
        self.sp <= row && row <= self.ep
    }
}

impl std::fmt::Display for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}..{}]", self.sp, self.ep)
    }
}
