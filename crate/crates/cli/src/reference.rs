//! Published reference values for the basic swimmer's controllability
//! generators at six shape points (k = 1, L = 1), used by the
//! `appendix-table` command and the golden acceptance test. Vectors are
//! compared after per-vector sign normalization; the h3 pair is matched as
//! an unordered set.

use std::f64::consts::PI;

#[derive(Debug, Clone, Copy)]
pub struct ReferenceRow {
    pub alpha: (f64, f64),
    pub h1: [[f64; 3]; 2],
    pub h2: [f64; 3],
    pub h3: [[f64; 3]; 2],
    pub span_h2_h3: usize,
}

pub const REFERENCE_TABLE: [ReferenceRow; 6] = [
    ReferenceRow {
        alpha: (0.0, 0.0),
        h1: [[0.0, 0.333, -0.259], [0.0, 0.333, 0.259]],
        h2: [-0.469, 0.0, 0.0],
        h3: [[0.0, 0.228, -0.242], [0.0, 0.821, -0.329]],
        span_h2_h3: 3,
    },
    ReferenceRow {
        alpha: (0.0, PI / 4.0),
        h1: [[-0.106, 0.317, -0.277], [-0.226, 0.306, 0.243]],
        h2: [-0.389, -0.185, -0.058],
        h3: [[-0.087, 0.233, -0.237], [-0.341, 0.778, -0.348]],
        span_h2_h3: 3,
    },
    ReferenceRow {
        alpha: (0.0, PI / 2.0),
        h1: [[-0.16, 0.271, -0.320], [-0.395, 0.283, 0.209]],
        h2: [-0.223, -0.321, -0.064],
        h3: [[-0.024, 0.308, -0.167], [-0.339, 0.812, -0.301]],
        span_h2_h3: 3,
    },
    ReferenceRow {
        alpha: (0.0, 3.0 * PI / 4.0),
        h1: [[-0.127, 0.222, -0.366], [-0.416, 0.714, 0.343]],
        h2: [-0.289, -0.317, 0.037],
        h3: [[-0.033, 1.261, 0.227], [-0.418, 2.828, 0.325]],
        span_h2_h3: 3,
    },
    ReferenceRow {
        alpha: (0.0, PI),
        h1: [[0.0, 0.333, -0.333], [0.0, 5.66, 2.33]],
        h2: [-2.888, 0.0, 0.0],
        h3: [[0.0, 34.481, 12.481], [0.0, 77.629, 10.518]],
        span_h2_h3: 3,
    },
    ReferenceRow {
        alpha: (PI, 0.0),
        h1: [[0.0, -0.629, 0.185], [0.0, -0.037, 0.481]],
        h2: [0.419, 0.0, 0.0],
        h3: [[0.0, -0.059, -0.372], [0.0, -0.166, -0.232]],
        span_h2_h3: 3,
    },
];

/// Flip a vector so its first entry of magnitude above 1e-9 is positive.
pub fn sign_normalize(v: [f64; 3]) -> [f64; 3] {
    for x in v {
        if x.abs() > 1e-9 {
            return if x > 0.0 { v } else { [-v[0], -v[1], -v[2]] };
        }
    }
    v
}

/// Largest entrywise deviation after sign normalization.
pub fn normalized_delta(got: [f64; 3], want: [f64; 3]) -> f64 {
    let g = sign_normalize(got);
    let w = sign_normalize(want);
    (0..3).map(|i| (g[i] - w[i]).abs()).fold(0.0, f64::max)
}

/// Deltas for an unordered pair of vectors, under the pairing that
/// minimizes the worse of the two deltas. Returns deltas aligned with
/// `want`'s order.
pub fn set_match_deltas(got: [[f64; 3]; 2], want: [[f64; 3]; 2]) -> [f64; 2] {
    let direct = [
        normalized_delta(got[0], want[0]),
        normalized_delta(got[1], want[1]),
    ];
    let crossed = [
        normalized_delta(got[1], want[0]),
        normalized_delta(got[0], want[1]),
    ];
    if direct[0].max(direct[1]) <= crossed[0].max(crossed[1]) {
        direct
    } else {
        crossed
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_flips_on_first_significant_entry() {
        assert_eq!(sign_normalize([0.0, -2.0, 1.0]), [0.0, 2.0, -1.0]);
        assert_eq!(sign_normalize([1e-12, -2.0, 1.0]), [-1e-12, 2.0, -1.0]);
        assert_eq!(sign_normalize([0.5, -2.0, 1.0]), [0.5, -2.0, 1.0]);
    }

    #[test]
    fn set_match_picks_better_pairing() {
        let want = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]];
        let got = [[0.0, 1.01, 0.0], [1.02, 0.0, 0.0]];
        let d = set_match_deltas(got, want);
        assert!((d[0] - 0.02).abs() < 1e-12);
        assert!((d[1] - 0.01).abs() < 1e-12);
    }
}
