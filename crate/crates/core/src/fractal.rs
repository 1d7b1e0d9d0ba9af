//! The grey-square figure of an order-`p` termirial and its surface ratio.
//!
//! `F(n, 0)` is a row of `n` unit squares. `F(n, p)` halves the square side
//! and stacks the bands `F(1, p-1), F(2, p-1), ..., F(n, p-1)` bottom to top,
//! all left-aligned, so the figure holds `sum_k k^(p-1) = n^(p)` grey squares.
//!
//! Between consecutive orders the square side halves, so the grey area ratio
//! is `S_{p-1} / S_p = 4 * n^(p-1) / n^(p) = 4 (p+1) / (n+p)`. It tends to 4
//! from below, and `log2` of it tends to 2 without ever being constant in `p`
//! for `n >= 2`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::error::GuardError;
use crate::termirial::{termirial_p, Natural, Order};

/// Highest order [`build`] accepts.
pub const MAX_ORDER: u32 = 12;
/// Default limit on the number of grey cells in a built figure.
pub const DEFAULT_CELL_BUDGET: u64 = 10_000_000;

/// Side of one SVG cell in user units.
const SVG_CELL: u64 = 10;
const SVG_FILL: &str = "#808080";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractalFigure {
    pub n: u64,
    pub p: u32,
    /// Square side in units of the order-0 square: `1 / 2^p`.
    pub cell_side: BigRational,
    /// Grey cells as `(x, y)` on the `2^p`-per-unit grid, `y` pointing up.
    pub grey_cells: BTreeSet<(u64, u64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Svg,
    Ascii,
}

fn cells(n: u64, p: u32, out: &mut Vec<(u64, u64)>, y0: u64) -> u64 {
    if p == 0 {
        out.extend((0..n).map(|x| (x, y0)));
        return 1;
    }
    let mut y = y0;
    for k in 1..=n {
        y += cells(k, p - 1, out, y);
    }
    y - y0
}

/// Build `F(n, p)`.
pub fn build(n: u64, p: u32, cell_budget: u64) -> Result<FractalFigure, GuardError> {
    if n == 0 {
        return Err(GuardError::OutOfDomain("figure needs n >= 1".into()));
    }
    if p > MAX_ORDER {
        return Err(GuardError::SizeLimit {
            what: "p",
            value: u64::from(p),
            limit: u64::from(MAX_ORDER),
        });
    }
    GuardError::check(termirial_p(n, Order::from(p)), cell_budget)?;

    let mut out = Vec::new();
    cells(n, p, &mut out, 0);
    Ok(FractalFigure {
        n,
        p,
        cell_side: BigRational::new(BigInt::one(), BigInt::one() << p),
        grey_cells: out.into_iter().collect(),
    })
}

impl FractalFigure {
    pub fn count(&self) -> usize {
        self.grey_cells.len()
    }

    /// `(width, height)` of the bounding box in cells.
    pub fn extent(&self) -> (u64, u64) {
        let w = self.grey_cells.iter().map(|c| c.0 + 1).max().unwrap_or(0);
        let h = self.grey_cells.iter().map(|c| c.1 + 1).max().unwrap_or(0);
        (w, h)
    }

    /// Total grey area in units of the order-0 square.
    pub fn surface(&self) -> BigRational {
        let n = BigInt::from(self.grey_cells.len());
        &self.cell_side * &self.cell_side * BigRational::from_integer(n)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Ascii => self.render_ascii(),
            Format::Svg => self.render_svg(),
        }
    }

    fn render_ascii(&self) -> String {
        let (w, h) = self.extent();
        let mut out = String::with_capacity(((w + 1) * h) as usize);
        for y in (0..h).rev() {
            for x in 0..w {
                out.push(if self.grey_cells.contains(&(x, y)) {
                    '#'
                } else {
                    '.'
                });
            }
            out.push('\n');
        }
        out
    }

    fn render_svg(&self) -> String {
        let (w, h) = self.extent();
        let mut out = String::new();
        let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{0}" height="{1}" viewBox="0 0 {0} {1}">"#,
            w * SVG_CELL,
            h * SVG_CELL
        );
        // sorted by (y, x) descending y so rows come out top to bottom
        let mut ordered: Vec<_> = self
            .grey_cells
            .iter()
            .map(|&(x, y)| (h - 1 - y, x))
            .collect();
        ordered.sort_unstable();
        for (row, x) in ordered {
            let _ = writeln!(
                out,
                r#"  <rect x="{}" y="{}" width="{SVG_CELL}" height="{SVG_CELL}" fill="{SVG_FILL}" stroke="black" stroke-width="1"/>"#,
                x * SVG_CELL,
                row * SVG_CELL
            );
        }
        out.push_str("</svg>\n");
        out
    }
}

/// Grey-area ratio between consecutive orders.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceReport {
    pub n: u64,
    pub p: u32,
    /// `S_{p-1} / S_p`.
    pub ratio: BigRational,
    /// `4 (p+1) / (n+p)`, evaluated independently of the counts.
    pub closed_form: BigRational,
    /// `log2(ratio)`.
    pub dimension_estimate: f64,
}

impl SurfaceReport {
    fn new(n: u64, p: u32, ratio: BigRational) -> Self {
        let dimension_estimate = ratio.to_f64().map_or(f64::NAN, f64::log2);
        SurfaceReport {
            n,
            p,
            closed_form: ratio_closed_form(n, p),
            ratio,
            dimension_estimate,
        }
    }

    pub fn agrees(&self) -> bool {
        self.ratio == self.closed_form
    }
}

/// `4 (p+1) / (n+p)` as an exact rational.
pub fn ratio_closed_form(n: u64, p: u32) -> BigRational {
    BigRational::new(BigInt::from(4u32) * (u64::from(p) + 1), BigInt::from(n) + p)
}

/// Ratio measured on two built figures of consecutive orders.
pub fn measured_ratio(
    coarse: &FractalFigure,
    fine: &FractalFigure,
) -> Result<BigRational, GuardError> {
    if coarse.n != fine.n || coarse.p + 1 != fine.p {
        return Err(GuardError::OutOfDomain(format!(
            "figures F({}, {}) and F({}, {}) are not consecutive orders of one n",
            coarse.n, coarse.p, fine.n, fine.p
        )));
    }
    Ok(coarse.surface() / fine.surface())
}

/// Surface report measured on built figures `F(n, p-1)` and `F(n, p)`.
pub fn surface_report_from_figures(
    n: u64,
    p: u32,
    cell_budget: u64,
) -> Result<SurfaceReport, GuardError> {
    if p == 0 {
        return Err(GuardError::OutOfDomain("surface ratio needs p >= 1".into()));
    }
    let fine = build(n, p, cell_budget)?;
    let coarse = build(n, p - 1, cell_budget)?;
    Ok(SurfaceReport::new(n, p, measured_ratio(&coarse, &fine)?))
}

/// Surface report from exact grey-cell counts, valid for any order.
///
/// The counts are termirials, so no figure is built; this is what reaches
/// orders far past [`MAX_ORDER`].
pub fn surface_report(n: u64, p: u32) -> Result<SurfaceReport, GuardError> {
    if n == 0 || p == 0 {
        return Err(GuardError::OutOfDomain(
            "surface ratio needs n >= 1 and p >= 1".into(),
        ));
    }
    let coarse = termirial_p(n, Order::from(p - 1));
    let fine = termirial_p(n, Order::from(p));
    let to_int = |v: Natural| BigInt::from(v);
    let ratio = BigRational::new(to_int(coarse) * 4, to_int(fine));
    Ok(SurfaceReport::new(n, p, ratio))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn build_counts() {
        assert_eq!(build(4, 0, DEFAULT_CELL_BUDGET).unwrap().count(), 4);
        assert_eq!(build(4, 2, DEFAULT_CELL_BUDGET).unwrap().count(), 20);
        for p in 0..=MAX_ORDER {
            assert_eq!(build(1, p, DEFAULT_CELL_BUDGET).unwrap().count(), 1);
        }
    }

    #[test]
    fn build_layout() {
        let f = build(3, 1, DEFAULT_CELL_BUDGET).unwrap();
        assert_eq!(f.render(Format::Ascii), "###\n##.\n#..\n");
        assert_eq!(f.cell_side, q(1, 2));
        assert_eq!(f.extent(), (3, 3));
    }

    #[test]
    fn build_guards() {
        assert!(matches!(
            build(0, 1, DEFAULT_CELL_BUDGET),
            Err(GuardError::OutOfDomain(_))
        ));
        assert!(matches!(
            build(2, 13, u64::MAX),
            Err(GuardError::SizeLimit { .. })
        ));
        assert!(matches!(
            build(10, 8, 1000),
            Err(GuardError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn ascii_render() {
        assert_eq!(
            build(2, 0, DEFAULT_CELL_BUDGET)
                .unwrap()
                .render(Format::Ascii),
            "##\n"
        );
        let f = build(4, 2, DEFAULT_CELL_BUDGET).unwrap();
        let art = f.render(Format::Ascii);
        assert_eq!(art.matches('#').count(), 20);
        assert_eq!(art, f.render(Format::Ascii));
    }

    #[test]
    fn svg_render() {
        let f = build(4, 2, DEFAULT_CELL_BUDGET).unwrap();
        let svg = f.render(Format::Svg);
        assert_eq!(svg.matches("<rect ").count(), 20);
        assert!(svg.contains(r#"viewBox="0 0 40 100""#));
        assert!(svg.contains("fill=\"#808080\""));
        assert_eq!(svg, f.render(Format::Svg));
    }

    #[test]
    fn ratio_small_cases() {
        // S_0 = 4 squares of area 1, S_1 = 10 squares of area 1/4
        let r = surface_report_from_figures(4, 1, DEFAULT_CELL_BUDGET).unwrap();
        assert_eq!(r.ratio, q(16, 10));
        assert!(r.agrees());
        for p in 1..=MAX_ORDER {
            let r = surface_report_from_figures(1, p, DEFAULT_CELL_BUDGET).unwrap();
            assert_eq!(r.ratio, q(4, 1));
            assert_eq!(r.dimension_estimate, 2.0);
        }
    }

    #[test]
    fn ratio_limit() {
        let r = surface_report(4, 500).unwrap();
        assert!(r.agrees());
        assert_eq!(r.ratio, q(4 * 501, 504));
        assert!((r.dimension_estimate - 2.0).abs() < 0.01);
        let d1 = surface_report(4, 1).unwrap().dimension_estimate;
        let d2 = surface_report(4, 2).unwrap().dimension_estimate;
        assert_ne!(d1, d2);
    }

    #[test]
    fn measured_ratio_rejects_mismatched_figures() {
        let a = build(3, 1, DEFAULT_CELL_BUDGET).unwrap();
        let b = build(4, 2, DEFAULT_CELL_BUDGET).unwrap();
        assert!(measured_ratio(&a, &b).is_err());
        assert!(surface_report(3, 0).is_err());
    }
}
