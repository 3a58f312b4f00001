//! Standard smooth complete fans used in tests and examples.

use crate::fan_cox::Fan;

pub fn p1() -> Fan {
    Fan::new(1, vec![vec![1], vec![-1]], vec![vec![0], vec![1]]).unwrap()
}

pub fn p2() -> Fan {
    Fan::new(2, vec![vec![1, 0], vec![0, 1], vec![-1, -1]], vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
}

pub fn p1xp1() -> Fan {
    Fan::new(
        2,
        vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]],
        vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]],
    )
    .unwrap()
}

/// The first Hirzebruch surface.
pub fn f1() -> Fan {
    Fan::new(
        2,
        vec![vec![1, 0], vec![0, 1], vec![-1, 1], vec![0, -1]],
        vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]],
    )
    .unwrap()
}

pub fn all() -> Vec<Fan> {
    vec![p1(), p2(), p1xp1(), f1()]
}

pub fn by_name(name: &str) -> Option<Fan> {
    match name.to_ascii_lowercase().as_str() {
        "p1" => Some(p1()),
        "p2" => Some(p2()),
        "p1xp1" => Some(p1xp1()),
        "f1" => Some(f1()),
        _ => None,
    }
}
