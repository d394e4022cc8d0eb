//! Small integer-arithmetic helpers: Kronecker symbol, integer square root,
//! squarefree testing.

/// Kronecker symbol (d | n), extended Jacobi symbol including n = 2 and
/// negative arguments.
pub fn kronecker(d: i64, n: i64) -> i32 {
    let mut a = d;
    let mut b = n;
    if b == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    // (a | 2) part of b
    if a % 2 == 0 && b % 2 == 0 {
        return 0;
    }
    let mut v = 0;
    while b % 2 == 0 {
        v += 1;
        b /= 2;
    }
    let mut k = if v % 2 == 0 {
        1
    } else {
        // (a | 2) = (2 | a) = (-1)^((a^2-1)/8)
        match a.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => unreachable!("a even with b even handled above"),
        }
    };
    if b < 0 {
        b = -b;
        if a < 0 {
            k = -k;
        }
    }
    // now b odd positive; quadratic reciprocity loop
    loop {
        if b == 1 {
            return k;
        }
        a = a.rem_euclid(b);
        if a == 0 {
            return 0;
        }
        let mut v = 0;
        while a % 2 == 0 {
            v += 1;
            a /= 2;
        }
        if v % 2 == 1 && matches!(b.rem_euclid(8), 3 | 5) {
            k = -k;
        }
        // reciprocity: both odd now
        if a.rem_euclid(4) == 3 && b.rem_euclid(4) == 3 {
            k = -k;
        }
        std::mem::swap(&mut a, &mut b);
    }
}

/// Floor of the square root of a nonnegative integer.
pub fn isqrt(n: i64) -> i64 {
    if n < 0 {
        panic!("isqrt of negative number");
    }
    let mut x = (n as f64).sqrt() as i64;
    while x > 0 && x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

pub fn is_squarefree(m: i64) -> bool {
    let mut m = m.abs();
    if m == 0 {
        return false;
    }
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_table() {
        // chi_{-4}: 1,0,-1,0 pattern
        let want = [1, 0, -1, 0, 1, 0, -1, 0];
        for (i, &w) in want.iter().enumerate() {
            assert_eq!(kronecker(-4, (i + 1) as i64), w, "chi_-4({})", i + 1);
        }
        // chi_5 = Legendre(n|5): 1,-1,-1,1,0
        let want5 = [1, -1, -1, 1, 0];
        for (i, &w) in want5.iter().enumerate() {
            assert_eq!(kronecker(5, (i + 1) as i64), w, "chi_5({})", i + 1);
        }
        // chi_8(n) = (8|n) = (2|n): period 8: 1,0,-1,0,-1,0,1,0
        let want8 = [1, 0, -1, 0, -1, 0, 1, 0];
        for (i, &w) in want8.iter().enumerate() {
            assert_eq!(kronecker(8, (i + 1) as i64), w, "chi_8({})", i + 1);
        }
        // chi_{-3}: 1,-1,0 pattern
        let want3 = [1, -1, 0, 1, -1, 0];
        for (i, &w) in want3.iter().enumerate() {
            assert_eq!(kronecker(-3, (i + 1) as i64), w, "chi_-3({})", i + 1);
        }
    }

    #[test]
    fn kronecker_is_multiplicative_in_n() {
        for d in [-15, -8, -4, -3, 5, 8, 12_i64, 21] {
            for n1 in 1..30_i64 {
                for n2 in 1..30_i64 {
                    assert_eq!(
                        kronecker(d, n1 * n2),
                        kronecker(d, n1) * kronecker(d, n2),
                        "d={d} n1={n1} n2={n2}"
                    );
                }
            }
        }
    }

    #[test]
    fn isqrt_and_squarefree() {
        assert_eq!(isqrt(0), 0);
        assert_eq!(isqrt(15), 3);
        assert_eq!(isqrt(16), 4);
        assert_eq!(isqrt(1_000_000_007), 31622);
        assert!(is_squarefree(10));
        assert!(!is_squarefree(12));
        assert!(!is_squarefree(49));
        assert!(is_squarefree(-15));
        assert!(!is_squarefree(0));
    }
}
