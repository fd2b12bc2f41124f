use dashu_int::IBig;

/// Incremental exact rank of integer vectors by fraction-free elimination.
///
/// Each stored row is primitive (content 1) and vanishes at the pivot
/// columns of all rows stored before it.
#[derive(Clone, Debug)]
pub struct RankTracker {
    dim: usize,
    rows: Vec<(usize, Vec<IBig>)>,
}

fn gcd(a: &IBig, b: &IBig) -> IBig {
    let mut a = a.clone();
    let mut b = b.clone();
    if a < IBig::ZERO {
        a = -a;
    }
    if b < IBig::ZERO {
        b = -b;
    }
    while b != IBig::ZERO {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

fn make_primitive(v: &mut [IBig]) {
    let mut g = IBig::ZERO;
    for x in v.iter() {
        if *x != IBig::ZERO {
            g = gcd(&g, x);
            if g == IBig::ONE {
                return;
            }
        }
    }
    if g > IBig::ONE {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

impl RankTracker {
    pub fn new(dim: usize) -> Self {
        RankTracker {
            dim,
            rows: Vec::with_capacity(dim),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    /// Reduce `v` against the stored rows; `None` if it lies in their span.
    fn reduce(&self, v: &[i64]) -> Option<Vec<IBig>> {
        assert_eq!(v.len(), self.dim, "vector length does not match tracker dimension");
        let mut w: Vec<IBig> = v.iter().map(|&x| IBig::from(x)).collect();
        for (pc, row) in &self.rows {
            if w[*pc] == IBig::ZERO {
                continue;
            }
            let a = row[*pc].clone();
            let b = w[*pc].clone();
            for (wi, ri) in w.iter_mut().zip(row) {
                *wi = &a * &*wi - &b * ri;
            }
            make_primitive(&mut w);
        }
        if w.iter().all(|x| *x == IBig::ZERO) {
            None
        } else {
            Some(w)
        }
    }

    /// Whether `v` is independent of the stored rows (without storing it).
    pub fn is_independent(&self, v: &[i64]) -> bool {
        self.reduce(v).is_some()
    }

    /// Add `v` if it is independent of the stored rows; returns whether it was added.
    pub fn try_add(&mut self, v: &[i64]) -> bool {
        match self.reduce(v) {
            Some(w) => {
                let pc = w.iter().position(|x| *x != IBig::ZERO).expect("nonzero row");
                self.rows.push((pc, w));
                true
            }
            None => false,
        }
    }
}

/// Exact rank of a list of equal-length integer vectors.
pub fn integer_rank(vectors: &[Vec<i64>]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let mut t = RankTracker::new(first.len());
    for v in vectors {
        t.try_add(v);
        if t.is_full() {
            break;
        }
    }
    t.rank()
}
