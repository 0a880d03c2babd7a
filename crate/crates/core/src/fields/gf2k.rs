//! Coefficient arithmetic in GF(2^k) for `1 <= k <= 8`.
//!
//! Elements are bit vectors over the polynomial basis `1, w, w^2, ...` where
//! `w` is a root of the fixed minimal polynomial for `k` (see [`MODULI`]).
//! Multiplication goes through log/exp tables built once per degree.

use std::sync::OnceLock;

/// Largest supported extension degree.
pub const MAX_DEGREE: u8 = 8;

/// Minimal polynomial of the generator `w`, indexed by `k`, as a bit mask
/// including the leading term.
pub const MODULI: [u16; 9] = [
    0,
    0b11,          // x + 1
    0b111,         // x^2 + x + 1
    0b1011,        // x^3 + x + 1
    0b1_0011,      // x^4 + x + 1
    0b10_0101,     // x^5 + x^2 + 1
    0b100_0011,    // x^6 + x + 1
    0b1000_0011,   // x^7 + x + 1
    0b1_0001_1011, // x^8 + x^4 + x^3 + x + 1
];

struct Tables {
    order: usize,
    exp: Vec<u16>,
    log: Vec<u16>,
    // half[c] = smallest s with s^2 + s = c, if any
    half: Vec<Option<u16>>,
    trace: Vec<u8>,
    trace_one: u16,
}

static TABLES: [OnceLock<Tables>; 9] = [
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
];

/// Carry-less multiply followed by reduction modulo `MODULI[k]`.
pub(crate) fn clmul_reduce(k: u8, a: u16, b: u16) -> u16 {
    let mut acc: u32 = 0;
    for bit in 0..k {
        if (b >> bit) & 1 == 1 {
            acc ^= (a as u32) << bit;
        }
    }
    let modulus = MODULI[k as usize] as u32;
    for bit in (k as u32..2 * k as u32).rev() {
        if (acc >> bit) & 1 == 1 {
            acc ^= modulus << (bit - k as u32);
        }
    }
    acc as u16
}

fn build(k: u8) -> Tables {
    let size = 1usize << k;
    let order = size - 1;
    // find a primitive element; x^8+x^4+x^3+x+1 is not primitive so w may not be
    let mut generator = None;
    'search: for g in 2..size.max(3) as u16 {
        if k == 1 {
            break;
        }
        let mut x = 1u16;
        for step in 1..=order {
            x = clmul_reduce(k, x, g);
            if x == 1 {
                if step == order {
                    generator = Some(g);
                    break 'search;
                }
                continue 'search;
            }
        }
    }
    let g = generator.unwrap_or(1);
    let mut exp = vec![0u16; 2 * order.max(1)];
    let mut log = vec![0u16; size];
    let mut x = 1u16;
    for (e, slot) in exp.iter_mut().enumerate().take(order.max(1)) {
        *slot = x;
        log[x as usize] = e as u16;
        x = clmul_reduce(k, x, g);
    }
    for e in order..2 * order {
        exp[e] = exp[e - order];
    }

    let mul = |a: u16, b: u16| clmul_reduce(k, a, b);
    let mut half = vec![None; size];
    for s in (0..size as u16).rev() {
        half[(mul(s, s) ^ s) as usize] = Some(s);
    }
    let mut trace = vec![0u8; size];
    for (c, tr) in trace.iter_mut().enumerate() {
        let mut acc = 0u16;
        let mut p = c as u16;
        for _ in 0..k {
            acc ^= p;
            p = mul(p, p);
        }
        debug_assert!(acc <= 1);
        *tr = acc as u8;
    }
    let trace_one = (0..size).find(|&c| trace[c] == 1).expect("trace is onto") as u16;
    Tables {
        order,
        exp,
        log,
        half,
        trace,
        trace_one,
    }
}

/// Handle to the coefficient field GF(2^k).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gf2k {
    k: u8,
}

impl Gf2k {
    /// GF(2) itself.
    pub const ONE_BIT: Gf2k = Gf2k { k: 1 };

    /// Panics if `k` is outside `1..=MAX_DEGREE`; callers validate first.
    pub fn new(k: u8) -> Self {
        assert!((1..=MAX_DEGREE).contains(&k), "unsupported degree {k}");
        Gf2k { k }
    }

    pub fn degree(self) -> u8 {
        self.k
    }

    pub fn size(self) -> usize {
        1usize << self.k
    }

    fn tables(self) -> &'static Tables {
        TABLES[self.k as usize].get_or_init(|| build(self.k))
    }

    #[inline]
    pub fn mul(self, a: u16, b: u16) -> u16 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.k == 1 {
            return 1;
        }
        let t = self.tables();
        t.exp[t.log[a as usize] as usize + t.log[b as usize] as usize]
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(self, a: u16) -> u16 {
        assert!(a != 0, "inverse of zero in GF(2^k)");
        if self.k == 1 {
            return 1;
        }
        let t = self.tables();
        t.exp[(t.order - t.log[a as usize] as usize) % t.order]
    }

    pub fn square(self, a: u16) -> u16 {
        self.mul(a, a)
    }

    /// The unique square root (Frobenius is bijective on a finite field).
    pub fn sqrt(self, a: u16) -> u16 {
        if a == 0 || self.k == 1 {
            return a;
        }
        let t = self.tables();
        let l = t.log[a as usize] as usize;
        // a = g^l, sqrt = g^(l * 2^(k-1))
        t.exp[(l << (self.k - 1)) % t.order]
    }

    pub fn trace(self, a: u16) -> u8 {
        self.tables().trace[a as usize]
    }

    /// Smallest element (as an integer) of trace one; the canonical
    /// non-trivial representative of GF(2^k)/℘(GF(2^k)).
    pub fn trace_one(self) -> u16 {
        self.tables().trace_one
    }

    /// Smallest `s` with `s^2 + s = c`, if one exists.
    pub fn artin_schreier_root(self, c: u16) -> Option<u16> {
        self.tables().half[c as usize]
    }

    /// `a^n` by repeated squaring.
    pub fn pow(self, a: u16, mut n: u64) -> u16 {
        let mut base = a;
        let mut acc = 1u16;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }
}
