#include "ncmult/almostmult.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace ncmult {

namespace {

constexpr double kTwoPi = 6.283185307179586477;

double top_eigenvalue(const CMatrix& A) {
    SpectralData sd = hermitian_eig(A);
    return sd.eigenvalues.empty() ? 0.0 : sd.eigenvalues.back();
}

void require_psd(const CMatrix& A, const char* who) {
    SpectralData sd = hermitian_eig(A);
    const double scale =
        std::max(1.0, sd.eigenvalues.empty() ? 0.0 : std::abs(sd.eigenvalues.back()));
    if (!sd.eigenvalues.empty() && sd.eigenvalues.front() < -1e-10 * scale)
        throw std::invalid_argument(std::string(who) + ": input not PSD, min eigenvalue = " +
                                    std::to_string(sd.eigenvalues.front()));
}

double exponent_times(double p, double factor) {
    return std::isinf(p) ? p : p * factor;
}

} // namespace

KrausMap make_kraus_map(std::vector<CMatrix> kraus, bool transpose_twist) {
    if (kraus.empty()) throw std::invalid_argument("make_kraus_map: no Kraus operators");
    const int n = kraus.front().rows;
    for (const auto& K : kraus)
        if (K.rows != n || K.cols != n)
            throw std::invalid_argument("make_kraus_map: operator size mismatch");
    CMatrix ksk(n, n), kks(n, n);
    for (const auto& K : kraus) {
        ksk = ksk + adjoint(K) * K;
        kks = kks + K * adjoint(K);
    }
    if (top_eigenvalue(ksk) > 1.0 + 1e-10)
        throw std::invalid_argument("make_kraus_map: not subunital, |sum K*K| = " +
                                    std::to_string(top_eigenvalue(ksk)));
    if (top_eigenvalue(kks) > 1.0 + 1e-10)
        throw std::invalid_argument("make_kraus_map: trace increasing, |sum KK*| = " +
                                    std::to_string(top_eigenvalue(kks)));
    return KrausMap{n, std::move(kraus), transpose_twist};
}

KrausMap random_kraus_map(int n, int k, std::uint64_t seed, bool transpose_twist) {
    if (n < 1 || k < 1) throw std::invalid_argument("random_kraus_map: need n, k >= 1");
    Rng rng(seed, 0x4b5241);
    std::vector<CMatrix> ops;
    ops.reserve(std::size_t(k));
    CMatrix ksk(n, n), kks(n, n);
    for (int i = 0; i < k; ++i) {
        CMatrix K = random_matrix(n, rng);
        ksk = ksk + adjoint(K) * K;
        kks = kks + K * adjoint(K);
        ops.push_back(std::move(K));
    }
    const double s = std::max(top_eigenvalue(ksk), top_eigenvalue(kks));
    const double scale = 1.0 / std::sqrt(s);
    for (auto& K : ops) K = scale * K;
    return make_kraus_map(std::move(ops), transpose_twist);
}

CMatrix apply_map(const KrausMap& map, const CMatrix& x) {
    if (x.rows != map.dim || x.cols != map.dim)
        throw std::invalid_argument("apply_map: dimension mismatch");
    const CMatrix arg = map.transpose_twist ? transpose(x) : x;
    CMatrix out(map.dim, map.dim);
    for (const auto& K : map.kraus) out = out + adjoint(K) * arg * K;
    return out;
}

CMatrix lemma11_quadrature(const CMatrix& alpha, const CMatrix& beta, const CMatrix& gamma,
                           double S, double h) {
    if (!(S > 0.0) || !(h > 0.0))
        throw std::invalid_argument("lemma11_quadrature: need S > 0 and h > 0");
    require_psd(alpha, "lemma11_quadrature(alpha)");
    require_psd(beta, "lemma11_quadrature(beta)");
    SpectralData sa = hermitian_eig(alpha);
    SpectralData sb = hermitian_eig(beta);
    const int n = alpha.rows;

    const double amax = std::max(1e-300, sa.eigenvalues.back());
    const double bmax = std::max(1e-300, sb.eigenvalues.back());

    // G = Va^* (alpha gamma + gamma beta) Vb, mapped entrywise by the scalar
    // quadratures I_ij = (1/2) int (b_j/a_i)^{is} sech(pi s) ds over the supports.
    CMatrix G = adjoint(sa.eigenvectors) * (alpha * gamma + gamma * beta) * sb.eigenvectors;
    const int steps = int(std::llround(2.0 * S / h));
    for (int i = 0; i < n; ++i) {
        const double ai = std::max(sa.eigenvalues[std::size_t(i)], 0.0);
        for (int j = 0; j < n; ++j) {
            const double bj = std::max(sb.eigenvalues[std::size_t(j)], 0.0);
            if (ai <= 1e-12 * amax || bj <= 1e-12 * bmax) {
                G(i, j) = 0.0; // kernel directions carry no phase
                continue;
            }
            const double L = std::log(bj) - std::log(ai);
            double re = 0.0, im = 0.0;
            for (int k = 0; k <= steps; ++k) {
                const double s = -S + h * double(k);
                const double w = (k == 0 || k == steps) ? 0.5 : 1.0;
                const double sech = 1.0 / std::cosh(3.14159265358979323846 * s);
                re += w * sech * std::cos(s * L);
                im += w * sech * std::sin(s * L);
            }
            G(i, j) *= 0.5 * h * cplx(re, im);
        }
    }
    return sa.eigenvectors * G * adjoint(sb.eigenvectors);
}

GapReport powers_stormer_gap(const CMatrix& x, const CMatrix& y, double theta, double p) {
    if (!(theta > 0.0 && theta <= 1.0))
        throw std::invalid_argument("powers_stormer_gap: theta must lie in (0,1]");
    if (!(p >= 1.0)) throw std::invalid_argument("powers_stormer_gap: p must satisfy p >= 1");
    const double tp = exponent_times(p, theta);
    if (!(tp >= 1.0))
        throw std::invalid_argument("powers_stormer_gap: theta*p below 1 is out of the desk regime");
    const double w = 1.0 / double(x.rows);
    GapReport rep;
    rep.lhs = schatten_norm(psd_power(x, theta) - psd_power(y, theta), p, w);
    rep.rhs = std::pow(schatten_norm(x - y, tp, w), theta);
    rep.slack = rep.rhs - rep.lhs;
    rep.instance = "powers_stormer theta=" + std::to_string(theta) + " p=" + std::to_string(p);
    return rep;
}

GapReport theoremB_gap(const KrausMap& map, const CMatrix& x, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("theoremB_gap: p must satisfy p >= 1");
    require_psd(x, "theoremB_gap");
    const double w = 1.0 / double(x.rows);
    const CMatrix sqrtx = psd_power(x, 0.5);
    const CMatrix tsq = apply_map(map, sqrtx);
    const CMatrix tx = apply_map(map, x);
    GapReport rep;
    rep.lhs = schatten_norm(tx - tsq * tsq, exponent_times(p, 2.0), w);
    rep.rhs = 0.5 * std::sqrt(schatten_norm(apply_map(map, x * x) - tx * tx, p, w));
    rep.slack = rep.rhs - rep.lhs;
    rep.instance = "theoremB p=" + std::to_string(p) + (map.transpose_twist ? " twist" : "");
    return rep;
}

GapReport cor13_gap(const KrausMap& map, const CMatrix& x, double theta) {
    if (!(theta > 0.0 && theta <= 1.0))
        throw std::invalid_argument("cor13_gap: theta must lie in (0,1]");
    require_psd(x, "cor13_gap");
    const double w = 1.0 / double(x.rows);
    const CMatrix xt = psd_power(x, theta);
    GapReport rep;
    rep.lhs = schatten_norm(apply_map(map, xt) - xt, 2.0 / theta, w);
    rep.rhs = kThetaPowerConstant *
              std::pow(schatten_norm(apply_map(map, x) - x, 2.0, w), 0.5 * theta) *
              std::pow(schatten_norm(x, 2.0, w), 0.5 * theta);
    rep.slack = rep.rhs - rep.lhs;
    rep.instance = "cor13 theta=" + std::to_string(theta);
    return rep;
}

GapReport cor14_gap(const KrausMap& map, const CMatrix& y, double theta) {
    if (!(theta > 0.0 && theta <= 1.0))
        throw std::invalid_argument("cor14_gap: theta must lie in (0,1]");
    if (herm_asymmetry(y) > 1e-12 * std::max(1.0, max_abs(y)))
        throw std::invalid_argument("cor14_gap: input not self-adjoint");
    const double w = 1.0 / double(y.rows);
    PolarDecomposition pd = polar(y);
    const CMatrix z = pd.u * psd_power(pd.absA, theta);
    GapReport rep;
    rep.lhs = schatten_norm(apply_map(map, z) - z, 2.0 / theta, w);
    rep.rhs = kSelfAdjointPowerConstant *
              std::pow(schatten_norm(apply_map(map, y) - y, 2.0, w), 0.25 * theta) *
              std::pow(schatten_norm(y, 2.0, w), 0.75 * theta);
    rep.slack = rep.rhs - rep.lhs;
    rep.instance = "cor14 theta=" + std::to_string(theta);
    return rep;
}

FreqSupportReport freq_support_control(const std::vector<cplx>& fhat, double alpha, double eps,
                                       int p) {
    const int N = int(fhat.size());
    if (N < 2) throw std::invalid_argument("freq_support_control: need at least two frequencies");
    if (!(alpha > 0.0) || !(eps > 0.0))
        throw std::invalid_argument("freq_support_control: need alpha, eps > 0");
    if (p < 2 || p % 2 != 0)
        throw std::invalid_argument("freq_support_control: desk check needs even integer p >= 2");

    auto centered = [N](int k) { return k <= N / 2 ? k : k - N; };
    double fmax = 0.0;
    for (const auto& v : fhat) fmax = std::max(fmax, std::abs(v));
    for (int k = 0; k < N; ++k)
        if (std::abs(double(centered(k))) >= alpha &&
            std::abs(fhat[std::size_t(k)]) > 1e-12 * fmax)
            throw std::invalid_argument("freq_support_control: support violation at frequency " +
                                        std::to_string(centered(k)));

    const double beta = alpha / (2.0 * eps);
    std::vector<double> zeta(std::size_t(N), 0.0);
    for (int k = 0; k < N; ++k)
        zeta[std::size_t(k)] = std::max(0.0, 1.0 - std::abs(double(centered(k))) / (2.0 * beta));

    // position-side samples of f; the element must be PSD in the abelian algebra
    std::vector<double> F(std::size_t(N), 0.0);
    for (int x = 0; x < N; ++x) {
        cplx acc = 0.0;
        for (int k = 0; k < N; ++k)
            acc += fhat[std::size_t(k)] *
                   std::polar(1.0, kTwoPi * double(k) * double(x) / double(N));
        if (std::abs(acc.imag()) > 1e-8 * std::max(1.0, std::abs(acc)))
            throw std::invalid_argument("freq_support_control: element is not self-adjoint");
        if (acc.real() < -1e-8 * std::max(1.0, fmax))
            throw std::invalid_argument("freq_support_control: element is not positive");
        F[std::size_t(x)] = std::max(0.0, acc.real());
    }

    const double expo = 2.0 / double(p);
    std::vector<cplx> ghat(std::size_t(N), cplx(0.0, 0.0));
    for (int k = 0; k < N; ++k) {
        cplx acc = 0.0;
        for (int x = 0; x < N; ++x)
            acc += std::pow(F[std::size_t(x)], expo) *
                   std::polar(1.0, -kTwoPi * double(k) * double(x) / double(N));
        ghat[std::size_t(k)] = acc / double(N);
    }

    double correction = 0.0; // |T_zeta g - g|_p^p under the normalized trace
    for (int x = 0; x < N; ++x) {
        cplx acc = 0.0;
        for (int k = 0; k < N; ++k)
            acc += (zeta[std::size_t(k)] - 1.0) * ghat[std::size_t(k)] *
                   std::polar(1.0, kTwoPi * double(k) * double(x) / double(N));
        correction += std::pow(std::abs(acc), double(p));
    }
    correction /= double(N);

    double df = 0.0, nf = 0.0;
    for (int k = 0; k < N; ++k) {
        df += std::norm((zeta[std::size_t(k)] - 1.0) * fhat[std::size_t(k)]);
        nf += std::norm(fhat[std::size_t(k)]);
    }
    FreqSupportReport rep;
    rep.correction_norm = correction;
    rep.bound = std::pow(kThetaPowerConstant, double(p)) * std::sqrt(df) * std::sqrt(nf);
    return rep;
}

double step_l1(const StepFunction& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i) s += f.weights[i] * f.values[i];
    return s;
}

double step_l1_distance(const StepFunction& f, const StepFunction& g) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i)
        s += f.weights[i] * std::abs(f.values[i] - g.values[i]);
    return s;
}

double threshold_select(const StepFunction& xi, const std::vector<StepFunction>& etas,
                        double eps) {
    const std::size_t cells = xi.values.size();
    if (cells == 0 || xi.weights.size() != cells)
        throw std::invalid_argument("threshold_select: malformed step function");
    for (const auto& e : etas)
        if (e.values.size() != cells || e.weights != xi.weights)
            throw std::invalid_argument("threshold_select: partitions do not match");
    for (double v : xi.values)
        if (v < 0.0) throw std::invalid_argument("threshold_select: negative step value");

    const double xin = step_l1(xi);
    double dsum = 0.0;
    for (const auto& e : etas) dsum += step_l1_distance(xi, e);
    if (!(dsum < eps * xin))
        throw std::invalid_argument(
            "threshold_select: precondition violated, ratio = " +
            std::to_string(xin > 0.0 ? dsum / xin : std::numeric_limits<double>::infinity()));

    // Both sides of the target inequality are step functions of t with breakpoints
    // at the function values, and integrating over t recovers the hypothesis, so
    // some midlevel has positive margin. Keep the best one.
    std::set<double> levels;
    levels.insert(0.0);
    for (double v : xi.values) levels.insert(v);
    for (const auto& e : etas)
        for (double v : e.values) levels.insert(v);

    std::vector<double> sorted(levels.begin(), levels.end());
    double best_t = -1.0, best_margin = 0.0;
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        const double t = 0.5 * (sorted[i] + sorted[i + 1]);
        double mass = 0.0;
        for (std::size_t c = 0; c < cells; ++c)
            if (xi.values[c] > t) mass += xi.weights[c];
        if (!(mass > 0.0)) continue;
        double s = 0.0;
        for (const auto& e : etas)
            for (std::size_t c = 0; c < cells; ++c)
                if ((xi.values[c] > t) != (e.values[c] > t)) s += xi.weights[c];
        const double margin = eps * mass - s;
        if (margin > best_margin) {
            best_margin = margin;
            best_t = t;
        }
    }
    if (best_t < 0.0)
        throw std::logic_error("threshold_select: no valid level found despite the precondition");
    return best_t;
}

CMatrix random_matrix(int n, Rng& rng) {
    CMatrix A(n, n);
    for (auto& v : A.a) v = rng.cnormal();
    return A;
}

CMatrix random_hermitian(int n, Rng& rng) {
    CMatrix A = random_matrix(n, rng);
    return 0.5 * (A + adjoint(A));
}

CMatrix random_psd(int n, Rng& rng) {
    CMatrix A = random_matrix(n, rng);
    return cplx(1.0 / n, 0.0) * (adjoint(A) * A);
}

} // namespace ncmult
