//! GL_n Newton polygons: upper convex hulls and slope sequences.

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::ratvec::{fmt_rational, rat};
use crate::error::{Error, Result};

/// Input point for [`upper_hull_polygon`]; `y = None` stands for a
/// valuation of `0`, i.e. a point at `−∞` that does not constrain the hull.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HullPoint {
    pub x: i64,
    pub y: Option<BigRational>,
}

impl HullPoint {
    pub fn new(x: i64, y: BigRational) -> Self {
        Self { x, y: Some(y) }
    }

    pub fn absent(x: i64) -> Self {
        Self { x, y: None }
    }
}

/// Concave piecewise-linear polygon with integral break points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub vertices: Vec<(BigRational, BigRational)>,
    /// One slope per unit of width, left to right.
    pub slopes: Vec<BigRational>,
}

impl NewtonPolygon {
    /// The polygon through the partial sums of a weakly decreasing sequence.
    pub fn from_slopes(slopes: &[BigRational]) -> Result<Self> {
        if let Some(w) = slopes.windows(2).find(|w| w[0] < w[1]) {
            return Err(Error::Polygon(format!(
                "slopes must be weakly decreasing, found {} before {}",
                fmt_rational(&w[0]),
                fmt_rational(&w[1])
            )));
        }
        let mut points = vec![(rat(0), rat(0))];
        let mut acc = BigRational::zero();
        for (i, s) in slopes.iter().enumerate() {
            acc += s;
            points.push((rat(i as i64 + 1), acc.clone()));
        }
        Ok(Self {
            vertices: drop_collinear(points),
            slopes: slopes.to_vec(),
        })
    }

    pub fn width(&self) -> usize {
        self.slopes.len()
    }

    pub fn start(&self) -> &(BigRational, BigRational) {
        &self.vertices[0]
    }

    pub fn end(&self) -> &(BigRational, BigRational) {
        self.vertices.last().unwrap()
    }

    /// Height of the polygon at `x`, or `None` outside its span.
    pub fn value_at(&self, x: &BigRational) -> Option<BigRational> {
        let (x0, _) = self.start();
        let (x1, _) = self.end();
        if x < x0 || x > x1 {
            return None;
        }
        self.vertices.windows(2).find_map(|w| {
            let ((ax, ay), (bx, by)) = (&w[0], &w[1]);
            (ax <= x && x <= bx).then(|| ay + (by - ay) * (x - ax) / (bx - ax))
        })
    }

    /// Shares both endpoints with `other` and lies on or below it.
    pub fn lies_below(&self, other: &NewtonPolygon) -> bool {
        if self.start() != other.start() || self.end() != other.end() {
            return false;
        }
        self.vertices
            .iter()
            .chain(&other.vertices)
            .all(|(x, _)| match (self.value_at(x), other.value_at(x)) {
                (Some(a), Some(b)) => a <= b,
                _ => false,
            })
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("x\ty\n");
        for (x, y) in &self.vertices {
            out.push_str(&format!("{}\t{}\n", fmt_rational(x), fmt_rational(y)));
        }
        out
    }

    pub fn to_svg(&self) -> String {
        let f = |q: &BigRational| q.to_f64().unwrap_or(0.0);
        let xs: Vec<f64> = self.vertices.iter().map(|(x, _)| f(x)).collect();
        let ys: Vec<f64> = self.vertices.iter().map(|(_, y)| f(y)).collect();
        let (xmin, xmax) = min_max(&xs);
        let (ymin, ymax) = min_max(&ys);
        let scale = 40.0;
        let pad = 10.0;
        let width = (xmax - xmin) * scale + 2.0 * pad;
        let height = (ymax - ymin) * scale + 2.0 * pad;
        let pts: Vec<String> = xs
            .iter()
            .zip(&ys)
            .map(|(x, y)| format!("{:.3},{:.3}", (x - xmin) * scale + pad, (ymax - y) * scale + pad))
            .collect();
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{height:.0}\">\n  \
             <polyline fill=\"none\" stroke=\"black\" stroke-width=\"2\" points=\"{}\"/>\n</svg>\n",
            pts.join(" ")
        )
    }
}

fn min_max(v: &[f64]) -> (f64, f64) {
    v.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
        (lo.min(x), hi.max(x))
    })
}

/// Removes vertices lying on the segment between their neighbours.
fn drop_collinear(points: Vec<(BigRational, BigRational)>) -> Vec<(BigRational, BigRational)> {
    let mut out: Vec<(BigRational, BigRational)> = Vec::with_capacity(points.len());
    for p in points {
        while out.len() >= 2 {
            let a = &out[out.len() - 2];
            let b = &out[out.len() - 1];
            if cross(a, b, &p).is_zero() {
                out.pop();
            } else {
                break;
            }
        }
        out.push(p);
    }
    out
}

/// `(b − a) × (c − a)`; positive for a left (counter-clockwise) turn.
fn cross(
    a: &(BigRational, BigRational),
    b: &(BigRational, BigRational),
    c: &(BigRational, BigRational),
) -> BigRational {
    (&b.0 - &a.0) * (&c.1 - &a.1) - (&b.1 - &a.1) * (&c.0 - &a.0)
}

/// Upper convex hull of the finite points, with its slope sequence.
pub fn upper_hull_polygon(points: &[HullPoint]) -> Result<NewtonPolygon> {
    let mut pts: Vec<(i64, BigRational)> = points.iter().filter_map(|p| p.y.clone().map(|y| (p.x, y))).collect();
    pts.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(&a.1)));
    pts.dedup_by(|later, earlier| later.0 == earlier.0);
    if pts.len() < 2 {
        return Err(Error::Polygon(format!(
            "need at least two finite points, got {}",
            pts.len()
        )));
    }
    let mut hull: Vec<(BigRational, BigRational)> = Vec::new();
    for (x, y) in pts {
        let p = (rat(x), y);
        // Keep strictly right turns only.
        while hull.len() >= 2 && cross(&hull[hull.len() - 2], &hull[hull.len() - 1], &p) >= BigRational::zero() {
            hull.pop();
        }
        hull.push(p);
    }
    let mut slopes = Vec::new();
    for w in hull.windows(2) {
        let dx = &w[1].0 - &w[0].0;
        let slope = (&w[1].1 - &w[0].1) / &dx;
        let reps = dx.to_integer().to_usize().unwrap_or(0);
        slopes.extend(std::iter::repeat_n(slope, reps));
    }
    Ok(NewtonPolygon { vertices: hull, slopes })
}

/// Dominance of GL_n slope sequences: equal totals, and every partial sum
/// of `mu` is at most that of `lambda`.
pub fn dominance_leq_slopes(mu: &[BigRational], lambda: &[BigRational]) -> bool {
    if mu.len() != lambda.len() {
        return false;
    }
    let mut sm = BigRational::zero();
    let mut sl = BigRational::zero();
    for (m, l) in mu.iter().zip(lambda) {
        sm += m;
        sl += l;
        if sm > sl {
            return false;
        }
    }
    sm == sl
}

#[cfg(test)]
mod tests {
    use super::super::ratvec::{frac, parse_rational};
    use super::*;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    fn pts(v: &[(i64, i64)]) -> Vec<HullPoint> {
        v.iter().map(|&(x, y)| HullPoint::new(x, rat(y))).collect()
    }

    #[test]
    fn gl2_example_hull() {
        let p = upper_hull_polygon(&pts(&[(0, 0), (1, 2), (2, 1)])).unwrap();
        assert_eq!(p.slopes, vec![rat(2), rat(-1)]);
        assert_eq!(p.vertices.len(), 3);
    }

    #[test]
    fn two_point_hull() {
        let p = upper_hull_polygon(&pts(&[(0, 0), (4, 3)])).unwrap();
        assert_eq!(p.slopes, vec![frac(3, 4); 4]);
    }

    #[test]
    fn absent_points_are_ignored() {
        let mut input = pts(&[(0, 0), (2, 1)]);
        input.insert(1, HullPoint::absent(1));
        let p = upper_hull_polygon(&input).unwrap();
        assert_eq!(p.slopes, vec![frac(1, 2), frac(1, 2)]);
        assert!(upper_hull_polygon(&[HullPoint::new(0, rat(0)), HullPoint::absent(1)]).is_err());
    }

    #[test]
    fn slopes_polygon_five_slopes() {
        let slopes: Vec<_> = ["3", "1/2", "1/2", "-1", "-4"].iter().map(|s| q(s)).collect();
        let p = NewtonPolygon::from_slopes(&slopes).unwrap();
        let expect: Vec<_> = [(0, 0), (1, 3), (3, 4), (4, 3), (5, -1)]
            .iter()
            .map(|&(x, y)| (rat(x), rat(y)))
            .collect();
        assert_eq!(p.vertices, expect);
        let mu: Vec<_> = ["2", "1", "0", "0", "-4"].iter().map(|s| q(s)).collect();
        let pm = NewtonPolygon::from_slopes(&mu).unwrap();
        assert!(pm.lies_below(&p));
        assert!(!p.lies_below(&pm));
    }

    #[test]
    fn zero_slopes_is_axis() {
        let p = NewtonPolygon::from_slopes(&[rat(0), rat(0), rat(0)]).unwrap();
        assert_eq!(p.vertices, vec![(rat(0), rat(0)), (rat(3), rat(0))]);
    }

    #[test]
    fn unsorted_slopes_rejected() {
        assert!(NewtonPolygon::from_slopes(&[rat(-1), rat(2)]).is_err());
    }

    #[test]
    fn exports() {
        let p = NewtonPolygon::from_slopes(&[rat(2), rat(-1)]).unwrap();
        assert_eq!(p.to_tsv(), "x\ty\n0\t0\n1\t2\n2\t1\n");
        assert!(p.to_svg().contains("<polyline"));
    }
}
