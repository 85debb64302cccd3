//! Finite commutative rings given by full operation tables.

use serde::Serialize;

use crate::error::{Error, Result};

/// A finite commutative ring on `0..size`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TabRing {
    size: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    neg: Vec<usize>,
    zero: usize,
    one: usize,
}

impl TabRing {
    /// Validates the commutative ring axioms by full enumeration.
    pub fn from_tables(add: &[Vec<usize>], mul: &[Vec<usize>]) -> Result<TabRing> {
        let size = add.len();
        if size == 0 {
            return Err(Error::Malformed("a ring has at least one element".into()));
        }
        if mul.len() != size || add.iter().chain(mul).any(|r| r.len() != size) {
            return Err(Error::Malformed("ring tables must be square and of equal size".into()));
        }
        if let Some(&v) = add.iter().chain(mul).flatten().find(|&&v| v >= size) {
            return Err(Error::OutOfRange { index: v, size });
        }
        let flat = |t: &[Vec<usize>]| t.iter().flatten().copied().collect::<Vec<_>>();
        let (add, mul) = (flat(add), flat(mul));
        let zero = (0..size)
            .find(|&z| (0..size).all(|a| add[z * size + a] == a))
            .ok_or(Error::NotARing {
                law: "additive identity",
                witness: vec![],
            })?;
        let one = (0..size)
            .find(|&e| (0..size).all(|a| mul[e * size + a] == a))
            .ok_or(Error::NotARing {
                law: "multiplicative identity",
                witness: vec![],
            })?;
        let mut neg = vec![0; size];
        for a in 0..size {
            neg[a] = (0..size).find(|&b| add[a * size + b] == zero).ok_or(Error::NotARing {
                law: "additive inverse",
                witness: vec![a],
            })?;
        }
        let r = TabRing {
            size,
            add,
            mul,
            neg,
            zero,
            one,
        };
        r.validate()?;
        Ok(r)
    }

    fn validate(&self) -> Result<()> {
        let n = self.size;
        for a in 0..n {
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return Err(Error::NotARing {
                        law: "additive commutativity",
                        witness: vec![a, b],
                    });
                }
                if self.mul(a, b) != self.mul(b, a) {
                    return Err(Error::NotARing {
                        law: "multiplicative commutativity",
                        witness: vec![a, b],
                    });
                }
                for c in 0..n {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err(Error::NotARing {
                            law: "additive associativity",
                            witness: vec![a, b, c],
                        });
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::NotARing {
                            law: "multiplicative associativity",
                            witness: vec![a, b, c],
                        });
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(Error::NotARing {
                            law: "distributivity",
                            witness: vec![a, b, c],
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// `ℤ/n` with elements `0..n` in their usual order.
    pub fn zmod(n: usize) -> Result<TabRing> {
        if n == 0 {
            return Err(Error::Malformed("zmod needs n >= 1".into()));
        }
        let add = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        let mul = (0..n * n).map(|i| (i / n) * (i % n) % n).collect();
        let neg = (0..n).map(|a| (n - a) % n).collect();
        Ok(TabRing {
            size: n,
            add,
            mul,
            neg,
            zero: 0,
            one: 1 % n,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b]
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn sum<I: IntoIterator<Item = usize>>(&self, it: I) -> usize {
        it.into_iter().fold(self.zero, |acc, a| self.add(acc, a))
    }

    pub fn product<I: IntoIterator<Item = usize>>(&self, it: I) -> usize {
        it.into_iter().fold(self.one, |acc, a| self.mul(acc, a))
    }

    pub fn add_table(&self) -> Vec<Vec<usize>> {
        self.add.chunks(self.size).map(<[usize]>::to_vec).collect()
    }

    pub fn mul_table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.size).map(<[usize]>::to_vec).collect()
    }

    /// Whether `subset` is an ideal.
    pub fn is_ideal(&self, subset: &[usize]) -> bool {
        let mut member = vec![false; self.size];
        for &a in subset {
            if a >= self.size {
                return false;
            }
            member[a] = true;
        }
        member[self.zero]
            && subset.iter().all(|&a| {
                member[self.neg(a)]
                    && subset.iter().all(|&b| member[self.add(a, b)])
                    && (0..self.size).all(|r| member[self.mul(r, a)])
            })
    }

    /// Whether `subset` is a multiplicative submonoid containing `1`.
    pub fn is_submonoid(&self, subset: &[usize]) -> bool {
        let mut member = vec![false; self.size];
        for &a in subset {
            if a >= self.size {
                return false;
            }
            member[a] = true;
        }
        member[self.one] && subset.iter().all(|&a| subset.iter().all(|&b| member[self.mul(a, b)]))
    }

    /// `R / J`, with `project[r]` the coset of `r`. Cosets are numbered by their least element.
    pub fn quotient(&self, ideal: &[usize]) -> Result<(TabRing, Vec<usize>)> {
        if !self.is_ideal(ideal) {
            return Err(Error::NotAnIdeal {
                condition: "ring ideal",
                witness: format!("{ideal:?}"),
            });
        }
        let mut project = vec![usize::MAX; self.size];
        let mut reps = Vec::new();
        for r in 0..self.size {
            if project[r] == usize::MAX {
                for &j in ideal {
                    project[self.add(r, j)] = reps.len();
                }
                reps.push(r);
            }
        }
        let ring = self.induced(&reps, &project);
        Ok((ring, project))
    }

    /// `M⁻¹R` as pair classes `(r, m)` with `(r, m) ~ (r', m')` iff `m''(rm' - r'm) = 0` for some
    /// `m''` in `M`. Returns the ring, `class[r * |M| + i]` for the pair `(r, M[i])`, and the least
    /// pair of each class.
    pub fn localization(&self, monoid: &[usize]) -> Result<Localization> {
        if !self.is_submonoid(monoid) {
            return Err(Error::Malformed(format!("{monoid:?} is not a multiplicative submonoid")));
        }
        let mut m: Vec<usize> = monoid.to_vec();
        m.sort_unstable();
        m.dedup();
        let k = m.len();
        let pairs = self.size * k;
        let same = |(r, i): (usize, usize), (s, j): (usize, usize)| {
            let d = self.sub(self.mul(r, m[j]), self.mul(s, m[i]));
            m.iter().any(|&t| self.mul(t, d) == self.zero)
        };
        let mut class = vec![usize::MAX; pairs];
        let mut reps: Vec<(usize, usize)> = Vec::new();
        for r in 0..self.size {
            for i in 0..k {
                if class[r * k + i] != usize::MAX {
                    continue;
                }
                let c = reps.len();
                for s in 0..self.size {
                    for j in 0..k {
                        if class[s * k + j] == usize::MAX && same((r, i), (s, j)) {
                            class[s * k + j] = c;
                        }
                    }
                }
                reps.push((r, m[i]));
            }
        }
        let pos = |x: usize| m.binary_search(&x).expect("monoid is closed");
        let cls = |r: usize, s: usize| class[r * k + pos(s)];
        let n = reps.len();
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for &(r, s) in &reps {
            for &(r2, s2) in &reps {
                add.push(cls(self.add(self.mul(r, s2), self.mul(r2, s)), self.mul(s, s2)));
                mul.push(cls(self.mul(r, r2), self.mul(s, s2)));
            }
        }
        let neg = reps.iter().map(|&(r, s)| cls(self.neg(r), s)).collect();
        let ring = TabRing {
            size: n,
            add,
            mul,
            neg,
            zero: cls(self.zero, self.one),
            one: cls(self.one, self.one),
        };
        debug_assert!(ring.validate().is_ok());
        Ok(Localization {
            ring,
            monoid: m,
            class,
            base_one: self.one,
            reps,
        })
    }

    /// The ring structure transported to the classes of `project`, with `reps[c]` in class `c`.
    fn induced(&self, reps: &[usize], project: &[usize]) -> TabRing {
        let n = reps.len();
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for &a in reps {
            for &b in reps {
                add.push(project[self.add(a, b)]);
                mul.push(project[self.mul(a, b)]);
            }
        }
        TabRing {
            size: n,
            add,
            mul,
            neg: reps.iter().map(|&a| project[self.neg(a)]).collect(),
            zero: project[self.zero],
            one: project[self.one],
        }
    }
}

/// The result of [`TabRing::localization`].
#[derive(Clone, Debug)]
pub struct Localization {
    pub ring: TabRing,
    /// Sorted members of the inverted monoid.
    pub monoid: Vec<usize>,
    class: Vec<usize>,
    base_one: usize,
    /// Least pair `(r, m)` of each class.
    pub reps: Vec<(usize, usize)>,
}

impl Localization {
    /// Class of `r / m`; `None` if `m` is not in the monoid.
    pub fn fraction(&self, r: usize, m: usize) -> Option<usize> {
        let i = self.monoid.binary_search(&m).ok()?;
        Some(self.class[r * self.monoid.len() + i])
    }

    /// `r ↦ r / 1`
    pub fn canonical(&self, r: usize) -> usize {
        self.fraction(r, self.base_one).expect("1 is in the monoid")
    }
}
