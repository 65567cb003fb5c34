//! Following the complex-capable level pair along a sweep.
//!
//! The reduced cubic has three levels at each grid point. Where two of them
//! form a complex-conjugate pair, that pair is E±. Elsewhere the labels are
//! carried over from the neighbouring points: each level takes the label
//! whose linear extrapolation lies closest. Within the pair, E⁻ is the one
//! that sorts first by (real, imaginary) part.

use num_complex::Complex64;

const PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// `[E⁻, E⁺, E0]` at one grid point.
pub type Labelled = [Complex64; 3];

fn lex_sorted(a: Complex64, b: Complex64) -> (Complex64, Complex64) {
    if (a.re, a.im) <= (b.re, b.im) {
        (a, b)
    } else {
        (b, a)
    }
}

/// Labels from the levels alone, if they contain a complex pair.
fn label_broken(levels: &[Complex64; 3]) -> Option<Labelled> {
    let real: Vec<usize> = (0..3).filter(|&i| levels[i].im == 0.0).collect();
    if real.len() != 1 {
        return None;
    }
    let r = real[0];
    let pair: Vec<Complex64> = (0..3).filter(|&i| i != r).map(|i| levels[i]).collect();
    let (minus, plus) = lex_sorted(pair[0], pair[1]);
    Some([minus, plus, levels[r]])
}

/// Labels continuing from `previous` and, if known, the point before it.
/// Extrapolating matters where levels touch: after a triple point all three
/// are equally close to the last labels.
fn label_continued(
    levels: &[Complex64; 3],
    previous: &Labelled,
    before: Option<&Labelled>,
) -> Labelled {
    if let Some(labels) = label_broken(levels) {
        return labels;
    }
    let predicted: Labelled = match before {
        Some(b) => [0, 1, 2].map(|k| 2.0 * previous[k] - b[k]),
        None => *previous,
    };
    let cost = |perm: &[usize; 3]| -> f64 {
        (0..3)
            .map(|k| (levels[perm[k]] - predicted[k]).norm())
            .sum()
    };
    let best = PERMUTATIONS
        .iter()
        .min_by(|a, b| cost(a).total_cmp(&cost(b)))
        .expect("six permutations");
    let (minus, plus) = lex_sorted(levels[best[0]], levels[best[1]]);
    [minus, plus, levels[best[2]]]
}

/// Labels for a whole sweep, in grid order.
pub fn track(levels: &[[Complex64; 3]]) -> Vec<Labelled> {
    let Some(first) = levels.first() else {
        return Vec::new();
    };
    // Anchor at the first broken point; with none, at the start with the
    // middle level as E0.
    let (anchor, anchor_labels) = levels
        .iter()
        .enumerate()
        .find_map(|(i, l)| label_broken(l).map(|lab| (i, lab)))
        .unwrap_or_else(|| {
            let mut sorted = *first;
            sorted.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
            (0, [sorted[0], sorted[2], sorted[1]])
        });

    let mut out = vec![anchor_labels; levels.len()];
    for i in anchor + 1..levels.len() {
        let before = (i >= anchor + 2).then(|| out[i - 2]);
        out[i] = label_continued(&levels[i], &out[i - 1], before.as_ref());
    }
    for i in (0..anchor).rev() {
        let before = (i + 2 <= anchor).then(|| out[i + 2]);
        out[i] = label_continued(&levels[i], &out[i + 1], before.as_ref());
    }
    out
}
