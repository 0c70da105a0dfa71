//! Sparse term maps shared by ring elements and truncated series.
//!
//! A monomial is an exponent vector; the map is kept canonical (no zero
//! coefficients) and ordered lexicographically by exponent vector.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

pub(crate) type Mono = Vec<i32>;
pub(crate) type Terms = BTreeMap<Mono, Scalar>;

pub(crate) fn add_term(terms: &mut Terms, mono: Mono, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match terms.entry(mono) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get().add(&c);
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

pub(crate) fn add_terms(a: &Terms, b: &Terms) -> Terms {
    let mut out = a.clone();
    for (m, c) in b {
        add_term(&mut out, m.clone(), c.clone());
    }
    out
}

pub(crate) fn neg_terms(a: &Terms) -> Terms {
    a.iter().map(|(m, c)| (m.clone(), c.neg())).collect()
}

pub(crate) fn mono_mul(a: &[i32], b: &[i32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn mul_terms(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            add_term(&mut out, mono_mul(ma, mb), ca.mul(cb));
        }
    }
    out
}

pub(crate) fn scale_terms(a: &Terms, mono: &[i32], c: &Scalar) -> Terms {
    a.iter()
        .filter_map(|(m, x)| {
            let y = x.mul(c);
            (!y.is_zero()).then(|| (mono_mul(m, mono), y))
        })
        .collect()
}

/// Exact division `num / den` in the ring `base[v_1, …, v_n]` where the
/// coordinates flagged in `laurent` may carry negative exponents.
///
/// Returns `None` when `den` does not divide `num`. With `integral` set the
/// quotient is computed over ℚ and then required to have integer
/// coefficients.
pub(crate) fn div_exact(num: &Terms, den: &Terms, laurent: &[bool], integral: bool) -> Option<Terms> {
    if den.is_empty() {
        return None;
    }
    if num.is_empty() {
        return Some(Terms::new());
    }
    let n = laurent.len();
    if den.len() == 1 {
        let (dm, dc) = den.iter().next().unwrap();
        let inv = dc.inv()?;
        let mut out = Terms::new();
        for (m, c) in num {
            let q: Mono = m.iter().zip(dm).map(|(a, b)| a - b).collect();
            if q.iter().zip(laurent).any(|(e, l)| *e < 0 && !l) {
                return None;
            }
            let qc = c.mul(&inv);
            if integral && !qc.is_integer() {
                return None;
            }
            out.insert(q, qc);
        }
        return Some(out);
    }

    // Clear Laurent denominators on both sides so plain polynomial division
    // applies; a unit monomial factor does not change divisibility.
    let min_exps = |t: &Terms| -> Vec<i32> {
        (0..n)
            .map(|i| if laurent[i] { t.keys().map(|m| m[i]).min().unwrap() } else { 0 })
            .collect()
    };
    let num_shift = min_exps(num);
    let den_shift = min_exps(den);
    let shift_by = |t: &Terms, s: &[i32]| -> Terms {
        t.iter()
            .map(|(m, c)| (m.iter().zip(s).map(|(a, b)| a - b).collect(), c.clone()))
            .collect()
    };
    let mut rem = shift_by(num, &num_shift);
    let den = shift_by(den, &den_shift);

    let (lead_m, lead_c) = den.iter().next_back().unwrap();
    let lead_inv = lead_c.inv()?;
    let mut quot = Terms::new();
    while let Some((rm, rc)) = rem.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
        let qm: Mono = rm.iter().zip(lead_m).map(|(a, b)| a - b).collect();
        if qm.iter().any(|e| *e < 0) {
            return None;
        }
        let qc = rc.mul(&lead_inv);
        for (dm, dc) in &den {
            add_term(&mut rem, mono_mul(dm, &qm), qc.mul(dc).neg());
        }
        add_term(&mut quot, qm, qc);
    }
    if integral && quot.values().any(|c| !c.is_integer()) {
        return None;
    }
    let back: Vec<i32> = num_shift.iter().zip(&den_shift).map(|(a, b)| b - a).collect();
    Some(shift_by(&quot, &back))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(v: &[(&[i32], i64)]) -> Terms {
        let mut out = Terms::new();
        for (m, c) in v {
            add_term(&mut out, m.to_vec(), Scalar::int(*c));
        }
        out
    }

    #[test]
    fn divides_product_back() {
        let a = t(&[(&[1, 0], 1), (&[0, 1], 2)]);
        let b = t(&[(&[2, 0], 3), (&[1, 1], -1), (&[0, 0], 5)]);
        let p = mul_terms(&a, &b);
        assert_eq!(div_exact(&p, &a, &[false, false], true), Some(b.clone()));
        assert_eq!(div_exact(&p, &b, &[false, false], true), Some(a));
    }

    #[test]
    fn integrality_is_enforced() {
        let two_x = t(&[(&[1], 2)]);
        let x = t(&[(&[1], 1)]);
        assert_eq!(div_exact(&x, &two_x, &[false], true), None);
        assert!(div_exact(&x, &two_x, &[false], false).is_some());
    }

    #[test]
    fn laurent_coordinates() {
        // (b^-1 x + x^2) / (x + b x^2) = b^-1
        let num = t(&[(&[1, -1], 1), (&[2, 0], 1)]);
        let den = t(&[(&[1, 0], 1), (&[2, 1], 1)]);
        let q = div_exact(&num, &den, &[false, true], true).unwrap();
        assert_eq!(q, t(&[(&[0, -1], 1)]));
    }
}
