use super::{FiniteOml, OmlError, OmlStructure};

pub const BUILTIN_NAMES: &str = "bool1..bool8 (also 2^n), mo1..mo4";

/// The Boolean algebra 2^n. Atoms are named a, b, c, ...; other elements
/// by concatenating their atoms, with "0" and "1" for the bounds.
pub fn boolean(n: usize) -> Result<FiniteOml, OmlError> {
    if n > 8 {
        return Err(OmlError::TooLarge(1 << n));
    }
    let size = 1usize << n;
    let full = size - 1;
    let name = |m: usize| -> String {
        if m == 0 {
            "0".into()
        } else if m == full {
            "1".into()
        } else {
            (0..n)
                .filter(|i| m & (1 << i) != 0)
                .map(|i| (b'a' + i as u8) as char)
                .collect()
        }
    };
    FiniteOml::new(OmlStructure {
        names: (0..size).map(name).collect(),
        leq: (0..size)
            .map(|a| (0..size).map(|b| a & b == a).collect())
            .collect(),
        ortho: (0..size).map(|a| full & !a).collect(),
    })
}

/// MO(n): n pairs of complementary atoms x, x' glued at 0 and 1.
/// Elements are ordered 0, a, a', b, b', ..., 1.
pub fn mo(n: usize) -> Result<FiniteOml, OmlError> {
    if n == 0 || n > 26 {
        return Err(OmlError::Document(format!("MO({n}) needs 1 <= n <= 26")));
    }
    let size = 2 * n + 2;
    let top = size - 1;
    let mut names = vec!["0".to_string()];
    for i in 0..n {
        let c = (b'a' + i as u8) as char;
        names.push(c.to_string());
        names.push(format!("{c}'"));
    }
    names.push("1".into());
    let leq = (0..size)
        .map(|a| (0..size).map(|b| a == b || a == 0 || b == top).collect())
        .collect();
    let ortho = (0..size)
        .map(|a| {
            if a == 0 {
                top
            } else if a == top {
                0
            } else if a % 2 == 1 {
                a + 1
            } else {
                a - 1
            }
        })
        .collect();
    FiniteOml::new(OmlStructure { names, leq, ortho })
}

/// Direct product, elements named "(x,y)".
pub fn product(l: &FiniteOml, r: &FiniteOml) -> Result<FiniteOml, OmlError> {
    let (n, m) = (l.size(), r.size());
    let idx = |i: usize, j: usize| i * m + j;
    let mut names = Vec::with_capacity(n * m);
    for x in l.elements() {
        for y in r.elements() {
            names.push(format!("({},{})", l.name(x), r.name(y)));
        }
    }
    let mut leq = vec![vec![false; n * m]; n * m];
    let mut ortho = vec![0; n * m];
    for i in 0..n {
        for j in 0..m {
            for k in 0..n {
                for t in 0..m {
                    leq[idx(i, j)][idx(k, t)] = l.le(l.at(i), l.at(k)) && r.le(r.at(j), r.at(t));
                }
            }
            ortho[idx(i, j)] = idx(l.o(l.at(i)).index(), r.o(r.at(j)).index());
        }
    }
    FiniteOml::new(OmlStructure { names, leq, ortho })
}

/// Looks up a builtin by name: `mo2`, `MO3`, `bool2`, `boolean3`, `2^4`.
pub fn builtin(name: &str) -> Result<FiniteOml, OmlError> {
    let lower = name.trim().to_ascii_lowercase();
    let unknown = || OmlError::UnknownBuiltin(name.to_string(), BUILTIN_NAMES.to_string());
    let num = |s: &str| s.parse::<usize>().map_err(|_| unknown());
    if let Some(rest) = lower.strip_prefix("mo") {
        let n = num(rest)?;
        if !(1..=4).contains(&n) {
            return Err(unknown());
        }
        return mo(n);
    }
    let rest = lower
        .strip_prefix("boolean")
        .or_else(|| lower.strip_prefix("bool"))
        .or_else(|| lower.strip_prefix("2^"));
    if let Some(rest) = rest {
        let n = num(rest)?;
        if !(1..=8).contains(&n) {
            return Err(unknown());
        }
        return boolean(n);
    }
    Err(unknown())
}
