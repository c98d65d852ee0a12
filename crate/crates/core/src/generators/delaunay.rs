//! Bowyer-Watson incremental Delaunay triangulation.
//!
//! Points are inserted in Hilbert-curve order into a triangulation seeded
//! with a large enclosing triangle. Each insertion locates the containing
//! triangle by a visibility walk from the previously created triangle,
//! grows the cavity of triangles whose circumcircle strictly contains the
//! new point, and re-fans the cavity boundary to the point. Triangles that
//! touch the enclosing triangle are dropped at the end.
//!
//! Orientation and in-circle tests use adaptive exact predicates. A point
//! lying exactly on a circumcircle does not invalidate that triangle, so
//! cocircular ties are resolved by insertion order.

use robust::{incircle, orient2d, Coord};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn distance(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    fn coord(self) -> Coord<f64> {
        Coord { x: self.x, y: self.y }
    }
}

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy)]
struct Triangle {
    /// counter-clockwise
    v: [u32; 3],
    /// `nbr[i]` shares the edge opposite `v[i]`
    nbr: [u32; 3],
}

struct Mesh<'a> {
    pts: &'a [Point],
    tris: Vec<Triangle>,
    alive: Vec<bool>,
    free: Vec<u32>,
    // per-insertion scratch
    bad: Vec<u32>,
    stack: Vec<u32>,
    boundary: Vec<(u32, u32, u32)>,
    fan: Vec<(u32, u32)>,
    mark: Vec<u32>,
    stamp: u32,
}

impl<'a> Mesh<'a> {
    fn orient(&self, a: u32, b: u32, c: u32) -> f64 {
        orient2d(
            self.pts[a as usize].coord(),
            self.pts[b as usize].coord(),
            self.pts[c as usize].coord(),
        )
    }

    fn in_circumcircle(&self, t: u32, p: u32) -> bool {
        let [a, b, c] = self.tris[t as usize].v;
        incircle(
            self.pts[a as usize].coord(),
            self.pts[b as usize].coord(),
            self.pts[c as usize].coord(),
            self.pts[p as usize].coord(),
        ) > 0.0
    }

    fn alloc(&mut self, tri: Triangle) -> u32 {
        if let Some(t) = self.free.pop() {
            self.tris[t as usize] = tri;
            self.alive[t as usize] = true;
            t
        } else {
            self.tris.push(tri);
            self.alive.push(true);
            self.mark.push(0);
            (self.tris.len() - 1) as u32
        }
    }

    /// Visibility walk from `start` to a triangle containing `p` (interior
    /// or boundary).
    fn locate(&self, start: u32, p: u32) -> u32 {
        let mut t = start;
        let mut rotate = 0usize;
        'walk: loop {
            let tri = self.tris[t as usize];
            rotate = (rotate + 1) % 3;
            for k in 0..3 {
                let i = (k + rotate) % 3;
                let a = tri.v[(i + 1) % 3];
                let b = tri.v[(i + 2) % 3];
                if self.orient(a, b, p) < 0.0 {
                    let next = tri.nbr[i];
                    debug_assert!(next != NONE, "walked out of the enclosing triangle");
                    t = next;
                    continue 'walk;
                }
            }
            return t;
        }
    }

    fn insert(&mut self, p: u32, hint: u32) -> u32 {
        let start = self.locate(hint, p);
        self.stamp += 1;
        let stamp = self.stamp;

        self.bad.clear();
        self.boundary.clear();
        self.stack.clear();
        self.stack.push(start);
        self.mark[start as usize] = stamp;
        while let Some(t) = self.stack.pop() {
            self.bad.push(t);
            let tri = self.tris[t as usize];
            for i in 0..3 {
                let a = tri.v[(i + 1) % 3];
                let b = tri.v[(i + 2) % 3];
                let n = tri.nbr[i];
                if n == NONE {
                    self.boundary.push((a, b, NONE));
                } else if self.mark[n as usize] == stamp {
                    continue;
                } else if self.in_circumcircle(n, p) {
                    self.mark[n as usize] = stamp;
                    self.stack.push(n);
                } else {
                    self.boundary.push((a, b, n));
                }
            }
        }

        for i in 0..self.bad.len() {
            let t = self.bad[i];
            self.alive[t as usize] = false;
            self.free.push(t);
        }

        // fan the cavity boundary to p; boundary edges run counter-clockwise
        // around the cavity, so (a, b, p) is counter-clockwise
        self.fan.clear();
        let mut last = NONE;
        for i in 0..self.boundary.len() {
            let (a, b, outside) = self.boundary[i];
            let t = self.alloc(Triangle {
                v: [a, b, p],
                nbr: [NONE, NONE, outside],
            });
            self.mark[t as usize] = 0;
            if outside != NONE {
                let o = &mut self.tris[outside as usize];
                let slot = (0..3)
                    .find(|&j| o.v[j] != a && o.v[j] != b)
                    .expect("outside triangle shares edge");
                o.nbr[slot] = t;
            }
            self.fan.push((a, t));
            last = t;
        }
        self.fan.sort_unstable();
        for i in 0..self.fan.len() {
            let (_, t) = self.fan[i];
            let b = self.tris[t as usize].v[1];
            // edge b->p borders the fan triangle starting at b
            let next = self.fan_triangle(b);
            self.tris[t as usize].nbr[0] = next;
            self.tris[next as usize].nbr[1] = t;
        }
        last
    }

    fn fan_triangle(&self, start: u32) -> u32 {
        let i = self
            .fan
            .binary_search_by_key(&start, |&(a, _)| a)
            .expect("cavity boundary is a closed cycle");
        self.fan[i].1
    }
}

/// Maps `(x, y)` on a `2^order` grid to its distance along the Hilbert curve.
fn hilbert_index(order: u32, mut x: u32, mut y: u32) -> u64 {
    let side = 1u32 << order;
    let mut d = 0u64;
    let mut s = side / 2;
    while s > 0 {
        let rx = u32::from(x & s > 0);
        let ry = u32::from(y & s > 0);
        d += u64::from(s) * u64::from(s) * u64::from((3 * rx) ^ ry);
        if ry == 0 {
            if rx == 1 {
                x = side - 1 - x;
                y = side - 1 - y;
            }
            std::mem::swap(&mut x, &mut y);
        }
        s /= 2;
    }
    d
}

fn hilbert_order(points: &[Point]) -> Vec<u32> {
    const ORDER: u32 = 16;
    let (mut min_x, mut min_y, mut max_x, mut max_y) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for p in points {
        min_x = min_x.min(p.x);
        min_y = min_y.min(p.y);
        max_x = max_x.max(p.x);
        max_y = max_y.max(p.y);
    }
    let span = (max_x - min_x).max(max_y - min_y).max(f64::MIN_POSITIVE);
    let cells = f64::from((1u32 << ORDER) - 1);
    let mut keyed: Vec<(u64, u32)> = points
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let gx = ((p.x - min_x) / span * cells) as u32;
            let gy = ((p.y - min_y) / span * cells) as u32;
            (hilbert_index(ORDER, gx, gy), i as u32)
        })
        .collect();
    keyed.sort_unstable();
    keyed.into_iter().map(|(_, i)| i).collect()
}

/// Delaunay triangles of `points` as counter-clockwise index triples.
///
/// Points must be pairwise distinct and finite. Fewer than three points, or
/// an all-collinear set, yields no triangles.
pub fn triangulate(points: &[Point]) -> Vec<[usize; 3]> {
    let n = points.len();
    if n < 3 {
        return Vec::new();
    }
    assert!(n < (NONE as usize) - 3, "too many points");

    let (mut min_x, mut min_y, mut max_x, mut max_y) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for p in points {
        min_x = min_x.min(p.x);
        min_y = min_y.min(p.y);
        max_x = max_x.max(p.x);
        max_y = max_y.max(p.y);
    }
    let cx = (min_x + max_x) / 2.0;
    let cy = (min_y + max_y) / 2.0;
    let r = (max_x - min_x).max(max_y - min_y).max(1.0) * 1e4;

    let mut pts = Vec::with_capacity(n + 3);
    pts.extend_from_slice(points);
    pts.push(Point::new(cx - 2.0 * r, cy - r));
    pts.push(Point::new(cx + 2.0 * r, cy - r));
    pts.push(Point::new(cx, cy + 2.0 * r));
    let super_a = n as u32;

    let mut mesh = Mesh {
        pts: &pts,
        tris: Vec::with_capacity(2 * n + 8),
        alive: Vec::with_capacity(2 * n + 8),
        free: Vec::new(),
        bad: Vec::new(),
        stack: Vec::new(),
        boundary: Vec::new(),
        fan: Vec::new(),
        mark: Vec::with_capacity(2 * n + 8),
        stamp: 0,
    };
    let mut hint = mesh.alloc(Triangle {
        v: [super_a, super_a + 1, super_a + 2],
        nbr: [NONE; 3],
    });
    for p in hilbert_order(points) {
        hint = mesh.insert(p, hint);
    }

    mesh.tris
        .iter()
        .zip(&mesh.alive)
        .filter(|(t, &alive)| alive && t.v.iter().all(|&v| v < super_a))
        .map(|(t, _)| t.v.map(|v| v as usize))
        .collect()
}
