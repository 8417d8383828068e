#ifndef BOOSTDIFF_FIELD_HPP
#define BOOSTDIFF_FIELD_HPP

#include <cmath>
#include <sstream>
#include <vector>

#include "boost_core.hpp"
#include "errors.hpp"

namespace boostdiff {

enum class Provenance { ClosedForm, SpectralOracle };

inline const char* to_string(Provenance p) {
    return p == Provenance::ClosedForm ? "closed-form" : "oracle";
}

/// Uniform grid xmin..xmax with n points (n >= 2), or the single point xmin.
inline std::vector<double> uniform_grid(double xmin, double xmax, std::size_t n) {
    if (n == 0) throw domain_error("grid needs at least one point");
    if (n == 1) return {xmin};
    if (!(xmax > xmin)) throw domain_error("grid requires xmax > xmin");
    std::vector<double> xs(n);
    const double h = (xmax - xmin) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) xs[i] = xmin + h * static_cast<double>(i);
    xs.back() = xmax;
    return xs;
}

/// One time row of a real density field.
struct FieldSlice {
    double time = 0.0;
    Frame frame = Frame::Boosted;
    std::vector<double> positions;
    std::vector<double> values;
    Provenance provenance = Provenance::ClosedForm;

    void validate() const {
        if (positions.size() != values.size()) throw domain_error("FieldSlice: positions and values differ in length");
        for (std::size_t i = 1; i < positions.size(); ++i) {
            if (!(positions[i] > positions[i - 1])) throw domain_error("FieldSlice: positions must be strictly increasing");
        }
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (!std::isfinite(values[i])) {
                std::ostringstream msg;
                msg << "FieldSlice: non-finite value at x=" << positions[i];
                throw domain_error(msg.str());
            }
        }
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : values) m = std::max(m, std::abs(v));
        return m;
    }
};

} // namespace boostdiff

#endif
