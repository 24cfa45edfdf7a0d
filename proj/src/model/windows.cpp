#include "model/windows.hpp"

#include <algorithm>
#include <stdexcept>

namespace gg::model {

ContextWindows build_context_windows(const audio::FeatureSequence& fs, int radius) {
    const int t_len = fs.frames(), d = fs.dims();
    if (t_len < 1) throw std::invalid_argument("build_context_windows: empty sequence");
    if (radius < 0) throw std::invalid_argument("build_context_windows: negative radius");
    const int w = 2 * radius + 1;

    ContextWindows out;
    out.window = w;
    out.dims = d;
    out.flat = Matrix(t_len, w * d);
    for (int t = 0; t < t_len; ++t) {
        double* row = out.flat.row(t);
        for (int o = -radius; o <= radius; ++o) {
            const int src = std::clamp(t + o, 0, t_len - 1);
            const double* x = fs.data.row(src);
            double* dst = row + (o + radius) * d;
            for (int k = 0; k < d; ++k) dst[k] = x[k];
        }
    }
    return out;
}

}  // namespace gg::model
