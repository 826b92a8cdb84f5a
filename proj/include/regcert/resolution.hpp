#ifndef REGCERT_RESOLUTION_HPP
#define REGCERT_RESOLUTION_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "regcert/scalar.hpp"

namespace regcert {

// A point of a chart with coordinates in Q(c1..c9) (free of x and y).
struct ChartPoint {
    Scalar u, v;

    bool operator==(const ChartPoint& o) const { return u == o.u && v == o.v; }
    std::string to_string() const;
};

// Plane curve germ: a square-free defining polynomial in Q(c)[x, y].
struct CurveGerm {
    std::string label;
    Poly f;
    bool away_from_center = false; // germ need not pass through the origin

    CurveGerm(std::string label_, Poly f_, bool away_from_center_ = false);
    static CurveGerm parse(const std::string& label, const std::string& text);
};

// Blow-up chart. Chart coordinates are always the ring variables (x, y);
// side 0 glues to the parent by (xp, yp) = (a + u, b + u v), side 1 by
// (xp, yp) = (a + u v, b + v), where (a, b) is the center in parent
// coordinates. The root chart has parent -1.
struct Chart {
    int id = 0;
    std::string name; // "root", "K1.0", "K1.1", ...
    int parent = -1;
    int side = -1;
    ChartPoint center;              // center of the parent blow-up
    bool retired = false;           // chart was itself blown up
    std::vector<ChartPoint> punctures; // later centers visible here
    Scalar to_root_x, to_root_y;    // composed map to root coordinates
};

struct BlowupEvent {
    int chart;
    ChartPoint center;
    int exceptional; // component index of the new E
};

struct Component {
    enum class Kind { Exceptional, Strict };
    Kind kind;
    std::string label;       // "E1".. or the germ label
    int birth_event = -1;    // for exceptional components
    long self_intersection = 0;
    std::map<int, Poly> eq;  // chart id -> local equation (absent: not visible)

    bool is_exceptional() const { return kind == Kind::Exceptional; }
};

struct Violation {
    int chart;
    ChartPoint point;
    std::string reason; // "singular(F)", "tangency(F,G)", "triple(F,G,H)"
};

struct Crossing {
    int comp_a, comp_b; // component indices, a < b
    int chart;
    ChartPoint point;
};

class ResolutionTree {
public:
    static ResolutionTree start(std::vector<CurveGerm> germs);

    const std::vector<Chart>& charts() const { return charts_; }
    const std::vector<Component>& components() const { return comps_; }
    const std::vector<BlowupEvent>& events() const { return events_; }
    std::vector<int> leaf_charts() const;
    int component_index(const std::string& label) const;

    // transfer a point between charts; nullopt if not visible there
    std::optional<ChartPoint> transfer(int from, int to, const ChartPoint& p) const;
    bool is_punctured(int chart, const ChartPoint& p) const;

    // all SNC violations of the reduced total transform, deduplicated
    // across charts and ordered by (canonical chart id, coordinates)
    std::vector<Violation> snc_violations() const;

    // blow up the given point of the given chart
    void blowup_point(int chart, const ChartPoint& p);

    // pairwise intersection points of components on the completed surface
    std::vector<Crossing> crossings() const;
    IntMatrix intersection_matrix() const;

    std::string to_string() const; // event log + component table + dual graph

private:
    std::vector<Chart> charts_;
    std::vector<Component> comps_;
    std::vector<BlowupEvent> events_;

    std::vector<std::pair<int, Poly>> chart_curves(int chart) const;
    friend ResolutionTree embedded_resolution(std::vector<CurveGerm>, long);
};

ResolutionTree embedded_resolution(std::vector<CurveGerm> germs, long max_steps = 64);

// Common Q(c)-rational zeros of a zero-dimensional polynomial system in
// (x, y). Throws IrrationalCenter when a genuine zero cannot be expressed
// in the constant tower.
std::vector<ChartPoint> solve_zero_dim(const std::vector<Poly>& system);

// multiplicity of f at the point (translate to the origin, take the
// minimal total (x,y)-degree)
long multiplicity_at(const Poly& f, const ChartPoint& p);

} // namespace regcert

#endif
