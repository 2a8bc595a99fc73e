use std::fmt::Write as _;

use super::{AllAState, ArcKind, CircleClass, Orientation};

const PITCH_X: f64 = 40.0;
const PITCH_Y: f64 = 30.0;
const MARGIN: f64 = 20.0;
const CLOSURE_STEP_Y: f64 = 10.0;
const CLOSURE_STEP_X: f64 = 14.0;
const BULGE: f64 = 0.6;

fn color(class: Option<CircleClass>) -> &'static str {
    match class {
        Some(CircleClass::SmallInner) => "#1f77b4",
        Some(CircleClass::MediumInner) => "#2ca02c",
        Some(CircleClass::EssentialWandering) => "#d62728",
        Some(CircleClass::NonEssentialWandering) => "#ff7f0e",
        Some(CircleClass::Nonwandering) => "#9467bd",
        Some(CircleClass::Unclassified) | None => "#7f7f7f",
    }
}

fn class_name(class: Option<CircleClass>) -> &'static str {
    match class {
        Some(CircleClass::SmallInner) => "small-inner",
        Some(CircleClass::MediumInner) => "medium-inner",
        Some(CircleClass::EssentialWandering) => "essential-wandering",
        Some(CircleClass::NonEssentialWandering) => "non-essential-wandering",
        Some(CircleClass::Nonwandering) => "nonwandering",
        Some(CircleClass::Unclassified) => "unclassified",
        None => "untraced",
    }
}

struct Layout {
    n: usize,
    levels: usize,
}

impl Layout {
    fn x(&self, position: usize) -> f64 {
        MARGIN + position as f64 * PITCH_X
    }

    fn nest(&self, position: usize) -> f64 {
        (self.n - position) as f64
    }

    fn y(&self, boundary: usize) -> f64 {
        MARGIN + self.n as f64 * CLOSURE_STEP_Y + boundary as f64 * PITCH_Y
    }

    fn point(&self, id: usize) -> (f64, f64) {
        (self.x(id % self.n), self.y(id / self.n))
    }

    fn width(&self) -> f64 {
        self.x(self.n - 1) + (self.n as f64 + 1.0) * CLOSURE_STEP_X + MARGIN
    }

    fn height(&self) -> f64 {
        self.y(self.levels) + self.n as f64 * CLOSURE_STEP_Y + MARGIN
    }

    /// Corner points of the closure loop of `position`, bottom to top.
    fn closure_route(&self, position: usize) -> [(f64, f64); 4] {
        let x = self.x(position);
        let drop = self.nest(position) * CLOSURE_STEP_Y;
        let right = self.x(self.n - 1) + self.nest(position) * CLOSURE_STEP_X;
        let (bottom, top) = (self.y(self.levels), self.y(0));
        [
            (x, bottom + drop),
            (right, bottom + drop),
            (right, top - drop),
            (x, top - drop),
        ]
    }
}

/// Deterministic SVG drawing of the all-A state: one closed path per circle,
/// colored by class, and one dashed line per segment.
pub fn render_state_svg(state: &AllAState) -> String {
    let n = state.word().strands();
    let layout = Layout {
        n,
        levels: state.crossing_count(),
    };
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.1}" height="{:.1}" viewBox="0 0 {:.1} {:.1}">"#,
        layout.width(),
        layout.height(),
        layout.width(),
        layout.height()
    );
    let _ = writeln!(out, r#"<g id="circles" fill="none" stroke-width="2">"#);
    for circle in state.circles() {
        let mut d = String::new();
        for (k, &(arc_id, forward)) in circle.arcs.iter().enumerate() {
            let arc = &state.arcs()[arc_id];
            let (from, to) = if forward {
                (arc.ends[0], arc.ends[1])
            } else {
                (arc.ends[1], arc.ends[0])
            };
            let (fx, fy) = layout.point(from);
            let (tx, ty) = layout.point(to);
            if k == 0 {
                let _ = write!(d, "M{fx:.1},{fy:.1}");
            }
            match arc.kind {
                ArcKind::Pass => {
                    let _ = write!(d, " L{tx:.1},{ty:.1}");
                }
                ArcKind::Cap | ArcKind::Cup => {
                    let dir = if arc.kind == ArcKind::Cap { 1.0 } else { -1.0 };
                    let (cx, cy) = ((fx + tx) / 2.0, fy + dir * BULGE * PITCH_Y);
                    let _ = write!(d, " Q{cx:.1},{cy:.1} {tx:.1},{ty:.1}");
                }
                ArcKind::Closure => {
                    let mut route = layout.closure_route(arc.column - 1);
                    if !forward {
                        route.reverse();
                    }
                    for (x, y) in route {
                        let _ = write!(d, " L{x:.1},{y:.1}");
                    }
                    let _ = write!(d, " L{tx:.1},{ty:.1}");
                }
            }
        }
        d.push_str(" Z");
        let _ = writeln!(
            out,
            r#"<path id="circle-{}" class="{}" stroke="{}" d="{}"/>"#,
            circle.id,
            class_name(circle.class),
            color(circle.class),
            d
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(
        out,
        r##"<g id="segments" stroke="#000000" stroke-width="1" stroke-dasharray="3,3">"##
    );
    let letters = state.word().letters();
    for segment in state.segments() {
        let level = segment.crossing;
        let column = letters[level].unsigned_abs() as usize;
        let (left, right) = (layout.x(column - 1), layout.x(column));
        let (top, bottom) = (layout.y(level), layout.y(level + 1));
        let (x1, y1, x2, y2) = match segment.orientation {
            Orientation::Horizontal => (left, (top + bottom) / 2.0, right, (top + bottom) / 2.0),
            Orientation::Vertical => {
                let mid = (left + right) / 2.0;
                let inset = 0.3 * PITCH_Y;
                (mid, top + inset, mid, bottom - inset)
            }
        };
        let _ = writeln!(
            out,
            r#"<line id="segment-{}" x1="{x1:.1}" y1="{y1:.1}" x2="{x2:.1}" y2="{y2:.1}"/>"#,
            segment.crossing
        );
    }
    let _ = writeln!(out, "</g>");
    out.push_str("</svg>\n");
    out
}
