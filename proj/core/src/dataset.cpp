#include "lvf/dataset.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lvf {

Dataset gen_gaussian_mixture(const std::vector<MixtureMode>& modes, std::size_t per_mode, Rng& rng) {
    if (modes.empty()) throw std::invalid_argument("gen_gaussian_mixture: no modes");
    const std::size_t dim = modes[0].mean.dim();
    for (const auto& mode : modes) {
        if (mode.mean.dim() != dim)
            throw std::invalid_argument("gen_gaussian_mixture: mode means have mixed dimensions");
        if (mode.std <= 0.0) throw std::invalid_argument("gen_gaussian_mixture: std must be > 0");
    }
    Dataset ds;
    ds.items = Matrix(modes.size() * per_mode, dim);
    ds.labels = std::vector<int>(modes.size() * per_mode);
    ds.input_dim = dim;
    ds.name = "gmm";
    std::size_t r = 0;
    for (std::size_t m = 0; m < modes.size(); ++m) {
        for (std::size_t i = 0; i < per_mode; ++i, ++r) {
            for (std::size_t c = 0; c < dim; ++c)
                ds.items(r, c) = modes[m].mean[c] + modes[m].std * rng.gaussian();
            (*ds.labels)[r] = static_cast<int>(m);
        }
    }
    return ds;
}

Dataset gen_ring(double radius, double noise_std, std::size_t n, Rng& rng) {
    if (radius <= 0.0) throw std::invalid_argument("gen_ring: radius must be > 0");
    if (n < 1) throw std::invalid_argument("gen_ring: n must be >= 1");
    Dataset ds;
    ds.items = Matrix(n, 2);
    ds.input_dim = 2;
    ds.name = "ring";
    for (std::size_t i = 0; i < n; ++i) {
        const double theta = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
        const double r = radius + noise_std * rng.gaussian();
        ds.items(i, 0) = r * std::cos(theta);
        ds.items(i, 1) = r * std::sin(theta);
    }
    return ds;
}

namespace {

Dataset take_rows(const Dataset& ds, const std::vector<std::size_t>& idx, const std::string& suffix) {
    Dataset out;
    out.items = Matrix(idx.size(), ds.items.cols());
    out.input_dim = ds.input_dim;
    out.name = ds.name + suffix;
    if (ds.labels) out.labels = std::vector<int>(idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r) {
        for (std::size_t c = 0; c < ds.items.cols(); ++c) out.items(r, c) = ds.items(idx[r], c);
        if (ds.labels) (*out.labels)[r] = (*ds.labels)[idx[r]];
    }
    return out;
}

}  // namespace

Split split(const Dataset& ds, double test_fraction, Rng& rng) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0))
        throw std::invalid_argument("split: test fraction must lie in (0,1)");
    const std::size_t n = ds.size();
    const auto n_test = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(n)));
    if (n_test == 0 || n_test == n) throw std::invalid_argument("split: empty partition");
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    rng.shuffle(perm);
    std::vector<std::size_t> test_idx(perm.begin(), perm.begin() + static_cast<long>(n_test));
    std::vector<std::size_t> train_idx(perm.begin() + static_cast<long>(n_test), perm.end());
    Split s;
    s.train = take_rows(ds, train_idx, "/train");
    s.test = take_rows(ds, test_idx, "/test");
    return s;
}

Dataset subsample(const Dataset& ds, std::size_t n, Rng& rng) {
    if (n > ds.size()) throw std::invalid_argument("subsample: n exceeds dataset size");
    std::vector<std::size_t> perm(ds.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    rng.shuffle(perm);
    perm.resize(n);
    return take_rows(ds, perm, "/sub");
}

}  // namespace lvf
