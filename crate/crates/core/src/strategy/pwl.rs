//! Lower envelopes of a few affine functions on a closed interval.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Affine {
    pub intercept: f64,
    pub slope: f64,
}

impl Affine {
    pub fn new(intercept: f64, slope: f64) -> Self {
        Self { intercept, slope }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.intercept + self.slope * x
    }

    /// Abscissa where `self` and `other` cross, if the lines are not parallel.
    pub fn crossing(&self, other: &Affine) -> Option<f64> {
        let ds = self.slope - other.slope;
        if ds == 0.0 {
            None
        } else {
            Some((other.intercept - self.intercept) / ds)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Piece {
    pub start: f64,
    pub end: f64,
    /// Index of the active line in the envelope's input.
    pub line: usize,
}

/// `x ↦ min_i lines[i](x)` on `[lo, hi]`: concave and piecewise linear.
#[derive(Debug, Clone, PartialEq)]
pub struct LowerEnvelope {
    lines: Vec<Affine>,
    pieces: Vec<Piece>,
}

impl LowerEnvelope {
    pub fn new(lines: Vec<Affine>, lo: f64, hi: f64) -> Self {
        assert!(!lines.is_empty() && lo <= hi);
        let mut cuts = vec![lo, hi];
        for (i, a) in lines.iter().enumerate() {
            for b in &lines[i + 1..] {
                if let Some(x) = a.crossing(b) {
                    if x > lo && x < hi {
                        cuts.push(x);
                    }
                }
            }
        }
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();

        let argmin = |x: f64| {
            (0..lines.len())
                .min_by(|&i, &j| lines[i].eval(x).total_cmp(&lines[j].eval(x)))
                .unwrap()
        };
        let mut pieces: Vec<Piece> = Vec::new();
        if cuts.len() == 1 {
            pieces.push(Piece { start: lo, end: hi, line: argmin(lo) });
        }
        for w in cuts.windows(2) {
            let line = argmin(0.5 * (w[0] + w[1]));
            match pieces.last_mut() {
                Some(last) if last.line == line => last.end = w[1],
                _ => pieces.push(Piece { start: w[0], end: w[1], line }),
            }
        }
        Self { lines, pieces }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.lines.iter().map(|l| l.eval(x)).fold(f64::INFINITY, f64::min)
    }

    pub fn lines(&self) -> &[Affine] {
        &self.lines
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Interior points where the active line changes.
    pub fn breakpoints(&self) -> Vec<f64> {
        self.pieces.iter().skip(1).map(|p| p.start).collect()
    }

    pub fn slopes(&self) -> Vec<f64> {
        self.pieces.iter().map(|p| self.lines[p.line].slope).collect()
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.pieces[0].start, self.pieces[self.pieces.len() - 1].end)
    }

    /// `{x : f(x) ≤ level}` as disjoint closed intervals in increasing order.
    /// For a concave envelope there are at most two.
    pub fn sublevel_set(&self, level: f64) -> Vec<(f64, f64)> {
        let mut out: Vec<(f64, f64)> = Vec::new();
        for piece in &self.pieces {
            let line = &self.lines[piece.line];
            let (l, r) = (piece.start, piece.end);
            let part = if line.slope == 0.0 {
                (line.intercept <= level).then_some((l, r))
            } else {
                let root = (level - line.intercept) / line.slope;
                if line.slope > 0.0 {
                    (root >= l).then(|| (l, root.min(r)))
                } else {
                    (root <= r).then(|| (root.max(l), r))
                }
            };
            if let Some((a, b)) = part {
                match out.last_mut() {
                    Some(last) if a <= last.1 => last.1 = last.1.max(b),
                    _ => out.push((a, b)),
                }
            }
        }
        out
    }
}
