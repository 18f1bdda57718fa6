//! Marching squares over a row-major grid of `f64` samples.
//!
//! A grid point is *inside* when its value is `<= level`. Crossing points are
//! linearly interpolated along cell edges and keyed by edge, so neighbouring
//! cells produce bit-identical shared vertices. Saddle cells are resolved by
//! a caller-provided sample at the cell centre.

use std::collections::HashMap;

/// Polyline in fractional grid coordinates `(i, j)`.
pub type GridPolyline = Vec<(f64, f64)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Edge {
    /// `(i, j) -- (i + 1, j)`
    H(usize, usize),
    /// `(i, j) -- (i, j + 1)`
    V(usize, usize),
}

struct Grid<'a> {
    values: &'a [f64],
    nx: usize,
    floor: f64,
}

impl Grid<'_> {
    fn at(&self, i: usize, j: usize) -> f64 {
        let v = self.values[j * self.nx + i];
        if v < self.floor {
            self.floor
        } else {
            v
        }
    }

    fn point(&self, e: Edge, level: f64) -> (f64, f64) {
        let (a, b, i, j, horizontal) = match e {
            Edge::H(i, j) => (self.at(i, j), self.at(i + 1, j), i, j, true),
            Edge::V(i, j) => (self.at(i, j), self.at(i, j + 1), i, j, false),
        };
        let t = if a == b { 0.5 } else { ((level - a) / (b - a)).clamp(0.0, 1.0) };
        if horizontal {
            (i as f64 + t, j as f64)
        } else {
            (i as f64, j as f64 + t)
        }
    }
}

/// Extracts the `level` iso-lines. Open polylines end on the grid boundary;
/// closed ones repeat their first vertex at the end.
pub fn march(
    values: &[f64],
    nx: usize,
    ny: usize,
    level: f64,
    mut center: impl FnMut(usize, usize) -> f64,
) -> Vec<GridPolyline> {
    assert_eq!(values.len(), nx * ny, "grid size mismatch");
    let grid = Grid {
        values,
        nx,
        floor: level - 1.0e3,
    };
    let inside = |i: usize, j: usize| grid.at(i, j) <= level;

    let mut segments: Vec<(Edge, Edge)> = Vec::new();
    for j in 0..ny.saturating_sub(1) {
        for i in 0..nx.saturating_sub(1) {
            let c00 = inside(i, j);
            let c10 = inside(i + 1, j);
            let c11 = inside(i + 1, j + 1);
            let c01 = inside(i, j + 1);
            let bottom = Edge::H(i, j);
            let top = Edge::H(i, j + 1);
            let left = Edge::V(i, j);
            let right = Edge::V(i + 1, j);

            let mut crossing = Vec::with_capacity(4);
            if c00 != c10 {
                crossing.push(bottom);
            }
            if c10 != c11 {
                crossing.push(right);
            }
            if c11 != c01 {
                crossing.push(top);
            }
            if c01 != c00 {
                crossing.push(left);
            }
            match crossing.len() {
                0 => {}
                2 => segments.push((crossing[0], crossing[1])),
                4 => {
                    let mid = center(i, j) <= level;
                    // cut off each corner whose state differs from the centre
                    if c00 != mid {
                        segments.push((left, bottom));
                    }
                    if c10 != mid {
                        segments.push((bottom, right));
                    }
                    if c11 != mid {
                        segments.push((right, top));
                    }
                    if c01 != mid {
                        segments.push((top, left));
                    }
                }
                _ => unreachable!("a cell has an even number of crossing edges"),
            }
        }
    }
    chain(&segments)
        .into_iter()
        .map(|edges| edges.into_iter().map(|e| grid.point(e, level)).collect())
        .collect()
}

fn chain(segments: &[(Edge, Edge)]) -> Vec<Vec<Edge>> {
    let mut at: HashMap<Edge, Vec<usize>> = HashMap::new();
    for (s, (a, b)) in segments.iter().enumerate() {
        at.entry(*a).or_default().push(s);
        at.entry(*b).or_default().push(s);
    }
    let mut used = vec![false; segments.len()];
    let mut out = Vec::new();

    let walk = |start: Edge, first: usize, used: &mut Vec<bool>| -> Vec<Edge> {
        let mut path = vec![start];
        let mut edge = start;
        let mut seg = first;
        loop {
            used[seg] = true;
            let (a, b) = segments[seg];
            edge = if a == edge { b } else { a };
            path.push(edge);
            match at[&edge].iter().find(|&&s| !used[s]) {
                Some(&s) => seg = s,
                None => break,
            }
        }
        path
    };

    // open chains start at edges used by a single segment
    for s in 0..segments.len() {
        if used[s] {
            continue;
        }
        let (a, b) = segments[s];
        for e in [a, b] {
            if !used[s] && at[&e].len() == 1 {
                out.push(walk(e, s, &mut used));
            }
        }
    }
    for s in 0..segments.len() {
        if !used[s] {
            out.push(walk(segments[s].0, s, &mut used));
        }
    }
    out
}
