//! Elementary modular arithmetic on machine integers.

use num_integer::Integer;

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Least non-negative residue of `a` modulo `m`.
pub fn rem(a: i64, m: i64) -> i64 {
    a.rem_euclid(m)
}

/// Least positive inverse of `a` modulo `m`, if it exists.
///
/// For `m == 1` every integer is a unit and the inverse is reported as 1.
pub fn inverse(a: i64, m: i64) -> Option<i64> {
    if m == 1 {
        return Some(1);
    }
    let egcd = rem(a, m).extended_gcd(&m);
    if egcd.gcd != 1 {
        return None;
    }
    match rem(egcd.x, m) {
        0 => None,
        x => Some(x),
    }
}

pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn mobius(n: u64) -> i32 {
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

pub fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Units of Z/qZ as least positive representatives, ascending.
pub fn units(q: i64) -> Vec<i64> {
    if q == 1 {
        return vec![1];
    }
    (1..q).filter(|&a| gcd(a, q) == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses() {
        assert_eq!(inverse(2, 7), Some(4));
        assert_eq!(inverse(-2, 7), Some(3));
        assert_eq!(inverse(4, 8), None);
        assert_eq!(inverse(3, 1), Some(1));
    }

    #[test]
    fn phi_and_mobius() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(25), 20);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(12), 0);
        assert_eq!(mobius(1), 1);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn primes() {
        let ps: Vec<i64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }
}
