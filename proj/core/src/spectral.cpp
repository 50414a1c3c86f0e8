#include "lvf/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include "lvf/linalg.hpp"
#include "lvf/parallel.hpp"

namespace lvf {

namespace {

// Pushes the forward pass and a Jacobian-so-far through a layer stack.
// `jac` arrives as d(input)/d(seed) and leaves as d(output)/d(seed).
Vector propagate_jacobian(const std::vector<Layer>& layers, Vector h, Matrix& jac) {
    for (const auto& layer : layers) {
        Vector pre = matvec(layer.weights, h);
        for (std::size_t i = 0; i < pre.dim(); ++i) pre[i] += layer.bias[i];
        jac = matmul(layer.weights, jac);
        for (std::size_t r = 0; r < jac.rows(); ++r) {
            const double d = activation_derivative(layer.spec.activation, pre[r]);
            for (std::size_t c = 0; c < jac.cols(); ++c) jac(r, c) *= d;
        }
        Vector out(pre.dim());
        for (std::size_t i = 0; i < pre.dim(); ++i)
            out[i] = apply_activation(layer.spec.activation, pre[i]);
        h = std::move(out);
    }
    return h;
}

}  // namespace

JacobianEstimate jacobian(const AutoencoderModel& m, const Vector& z, JacobianMethod method,
                          double fd_step) {
    if (z.dim() != m.bottleneck_k) throw std::invalid_argument("jacobian: dimension mismatch");
    JacobianEstimate est;
    est.at = z;
    est.method = method;
    if (method == JacobianMethod::analytic) {
        Matrix jac = Matrix::identity(m.bottleneck_k);
        Vector x = propagate_jacobian(m.decoder, z, jac);
        propagate_jacobian(m.encoder, std::move(x), jac);
        est.matrix = std::move(jac);
    } else {
        if (fd_step <= 0.0) throw std::invalid_argument("jacobian: fd step must be > 0");
        est.fd_step = fd_step;
        const std::size_t k = m.bottleneck_k;
        est.matrix = Matrix(k, k);
        for (std::size_t j = 0; j < k; ++j) {
            Vector zp = z, zm = z;
            zp[j] += fd_step;
            zm[j] -= fd_step;
            Vector fp = latent_step(m, zp);
            Vector fm = latent_step(m, zm);
            for (std::size_t i = 0; i < k; ++i)
                est.matrix(i, j) = (fp[i] - fm[i]) / (2.0 * fd_step);
        }
    }
    if (!est.matrix.all_finite()) throw std::runtime_error("jacobian: non-finite evaluation");
    return est;
}

Matrix input_jacobian(const AutoencoderModel& m, const Vector& x) {
    if (x.dim() != m.input_dim()) throw std::invalid_argument("input_jacobian: dimension mismatch");
    Matrix jac = Matrix::identity(m.input_dim());
    Vector z = propagate_jacobian(m.encoder, x, jac);
    propagate_jacobian(m.decoder, std::move(z), jac);
    return jac;
}

FixedPointClass classify(const AutoencoderModel& m, const FixedPoint& fp) {
    const Matrix jac = jacobian(m, fp.z_star).matrix;
    const double sigma = svd(jac).s[0];
    FixedPointClass cls;
    cls.spectral_norm = sigma;
    cls.max_abs_eigenvalue_proxy = sigma;
    cls.is_attractor = sigma < 1.0;
    return cls;
}

double convergence_estimate(double rho, double e0_norm, double eps) {
    if (e0_norm <= 0.0) throw std::invalid_argument("convergence_estimate: e0 must be > 0");
    if (eps <= 0.0) throw std::invalid_argument("convergence_estimate: eps must be > 0");
    if (eps >= e0_norm) return 0.0;
    if (rho <= 0.0 || rho >= 1.0)
        throw std::invalid_argument("convergence_estimate: rho must lie in (0,1)");
    return std::log(eps / e0_norm) / std::log(rho);
}

ConvergenceStudy convergence_correlation(const AutoencoderModel& m, const Matrix& seeds,
                                         const SolverParams& params, double dedup_cosine,
                                         unsigned threads) {
    ConvergenceStudy study;
    study.attractors = compute_attractors(m, seeds, params, dedup_cosine, threads);
    const std::size_t converged = seeds.rows() - study.attractors.non_converged;
    if (converged < 2) throw std::runtime_error("convergence_correlation: fewer than 2 converged seeds");

    study.classes.reserve(study.attractors.members.size());
    for (const auto& member : study.attractors.members)
        study.classes.push_back(classify(m, member));

    // Re-solve per seed to recover each destination; iteration counts come
    // from the same stopping rule the attractors were computed with.
    const double eps = std::sqrt(params.tol);
    std::vector<std::optional<FixedPoint>> solved(seeds.rows());
    parallel_for(seeds.rows(), threads, [&](std::size_t i) {
        solved[i] = solve_fixed_point(m, row_vector(seeds, i), params);
    });
    for (const auto& fp : solved) {
        if (!fp) continue;
        std::size_t dest = study.attractors.members.size();
        for (std::size_t j = 0; j < study.attractors.members.size(); ++j) {
            if (attractors_equal(fp->z_star, study.attractors.members[j].z_star, dedup_cosine)) {
                dest = j;
                break;
            }
        }
        if (dest == study.attractors.members.size()) continue;
        const double rho = study.classes[dest].spectral_norm;
        if (rho <= 0.0 || rho >= 1.0) continue;
        const double e0 = euclidean(fp->from_seed, study.attractors.members[dest].z_star);
        const double predicted = e0 <= eps ? 0.0 : convergence_estimate(rho, e0, eps);
        study.rows.push_back({dest, predicted, static_cast<double>(fp->iterations)});
    }

    std::vector<double> predicted, measured;
    predicted.reserve(study.rows.size());
    measured.reserve(study.rows.size());
    for (const auto& row : study.rows) {
        predicted.push_back(row.predicted);
        measured.push_back(row.measured);
    }
    study.pearson = pearson(predicted, measured);
    return study;
}

double homogeneity_check(const AutoencoderModel& m, const Vector& x) {
    if (!m.bias_free) throw std::invalid_argument("homogeneity_check: model has biases");
    for (const auto* half : {&m.encoder, &m.decoder})
        for (const auto& layer : *half)
            if (layer.spec.activation != Activation::relu && layer.spec.activation != Activation::linear)
                throw std::invalid_argument("homogeneity_check: requires relu/linear activations");
    Vector fx = forward(m, x);
    Vector jx = matvec(input_jacobian(m, x), x);
    const double denom = norm(fx);
    if (denom == 0.0) return 0.0;
    return euclidean(fx, jx) / denom;
}

std::optional<double> gradient_alignment(const AutoencoderModel& m, const Vector& z) {
    Vector v = field_at(m, z);
    if (norm(v) < 1e-12) return std::nullopt;
    Matrix jac = jacobian(m, z).matrix;
    for (std::size_t i = 0; i < jac.rows(); ++i) jac(i, i) -= 1.0;  // J_f - I
    Vector grad = scale(matvec_t(jac, v), 2.0);
    const double gn = norm(grad);
    if (gn < 1e-12 * norm(v)) return std::nullopt;  // isometric region, gradient vanishes
    return cosine(v, scale(grad, -1.0));
}

ScoreAlignment score_alignment(const AutoencoderModel& m,
                               const std::function<Vector(const Vector&)>& score,
                               const Matrix& probes) {
    ScoreAlignment result;
    result.n_probes = probes.rows();
    std::size_t positive = 0;
    for (std::size_t i = 0; i < probes.rows(); ++i) {
        Vector z = row_vector(probes, i);
        Vector v = field_at(m, z);
        if (norm(v) < 1e-12) {
            result.degenerate += 1;
            continue;
        }
        if (dot(v, score(z)) > 0.0) positive += 1;
    }
    result.fraction =
        probes.rows() == 0 ? 0.0 : static_cast<double>(positive) / static_cast<double>(probes.rows());
    return result;
}

std::optional<double> pearson(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.size() < 2) return std::nullopt;
    const double n = static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double saa = 0.0, sbb = 0.0, sab = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - ma, db = b[i] - mb;
        saa += da * da;
        sbb += db * db;
        sab += da * db;
    }
    if (saa <= 0.0 || sbb <= 0.0) return std::nullopt;
    return sab / std::sqrt(saa * sbb);
}

}  // namespace lvf
