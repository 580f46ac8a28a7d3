#include "levywn/prm.hpp"

#include <cmath>
#include <stdexcept>

#include "levywn/hermite.hpp"
#include "levywn/quadrature.hpp"

namespace levywn {

Box Box::from_lengths(std::vector<double> lengths) {
    Box box;
    box.lo.assign(lengths.size(), 0.0);
    box.hi = std::move(lengths);
    return box;
}

Box Box::symmetric(std::size_t d, double L) {
    Box box;
    box.lo.assign(d, -L);
    box.hi.assign(d, L);
    return box;
}

double Box::volume() const {
    double v = 1.0;
    for (std::size_t j = 0; j < lo.size(); ++j) v *= hi[j] - lo[j];
    return v;
}

PrmSampler::PrmSampler(const LevyMeasureModel& model, Box box, double eps)
    : box_(std::move(box)), eps_(eps) {
    if (box_.dim() < 1 || box_.dim() > 4 || box_.hi.size() != box_.lo.size()) {
        throw std::invalid_argument("PrmSampler: dimension must be 1..4");
    }
    if (eps_ < 0.0) throw std::invalid_argument("PrmSampler: eps must be >= 0");
    for (std::size_t j = 0; j < box_.dim(); ++j) {
        if (box_.hi[j] < box_.lo[j]) throw std::invalid_argument("PrmSampler: empty box side");
    }
    const double vol = box_.volume();
    mass_ = vol > 0.0 ? model.mass_above(eps_) * vol : 0.0;
    truncation_var_ = model.truncated_variance(eps_) * vol;
    if (vol > 0.0) jump_ = model.make_jump_sampler(eps_);
}

PointConfiguration PrmSampler::sample(RandomSource& rng) const {
    PointConfiguration config;
    config.box = box_;
    config.eps = eps_;
    config.mass = mass_;
    config.truncation_var = truncation_var_;
    if (mass_ <= 0.0) return config;

    const std::uint64_t count = rng.poisson(mass_);
    config.points.resize(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        PointConfiguration::JumpPoint& p = config.points[i];
        for (std::size_t j = 0; j < box_.dim(); ++j) {
            p.x[j] = rng.uniform(box_.lo[j], box_.hi[j]);
        }
        p.z = jump_(rng);
    }
    return config;
}

PointConfiguration sample_prm(const LevyMeasureModel& model, const Box& box, double eps,
                              RandomSource& rng) {
    return PrmSampler(model, box, eps).sample(rng);
}

double pair_raw(const PointConfiguration& config, const PointFunction& f) {
    const std::size_t d = config.dim();
    double s = 0.0;
    for (const auto& p : config.points) {
        s += f(std::span<const double>(p.x.data(), d), p.z);
    }
    return s;
}

double integrate_pi(const LevyMeasureModel& model, const Box& box, double eps,
                    const PointFunction& f, int nodes_per_axis) {
    const std::size_t d = box.dim();
    if (d < 1 || d > 4) throw std::invalid_argument("integrate_pi: dimension must be 1..4");
    if (box.volume() <= 0.0) return 0.0;

    std::vector<QuadratureRule> axis(d);
    for (std::size_t j = 0; j < d; ++j) {
        axis[j] = composite_gauss_legendre(nodes_per_axis, box.lo[j], box.hi[j], 2);
    }

    // For each jump size, integrate over the box by a tensor product rule.
    const auto box_integral = [&](double z) {
        std::array<double, 4> x{};
        std::array<std::size_t, 4> idx{};
        double total = 0.0;
        for (;;) {
            double w = 1.0;
            for (std::size_t j = 0; j < d; ++j) {
                x[j] = axis[j].nodes[idx[j]];
                w *= axis[j].weights[idx[j]];
            }
            total += w * f(std::span<const double>(x.data(), d), z);
            std::size_t j = 0;
            while (j < d && ++idx[j] == axis[j].size()) {
                idx[j] = 0;
                ++j;
            }
            if (j == d) break;
        }
        return total;
    };
    const double value = model.integrate(box_integral, eps);
    if (!std::isfinite(value)) throw std::runtime_error("integrate_pi: non-finite compensator");
    return value;
}

double pair_compensated(const PointConfiguration& config, const LevyMeasureModel& model,
                        const PointFunction& f) {
    return pair_compensated(config, f, integrate_pi(model, config.box, config.eps, f));
}

double pair_compensated(const PointConfiguration& config, const PointFunction& f,
                        double compensator) {
    return pair_raw(config, f) - compensator;
}

double eta_sample(const PointConfiguration& config, const LevyMeasureModel& model,
                  std::span<const double> x) {
    const std::size_t d = config.dim();
    if (x.size() != d) throw std::invalid_argument("eta_sample: dimension mismatch");
    double vol = 1.0;
    for (std::size_t j = 0; j < d; ++j) {
        if (x[j] < 0.0 || x[j] > config.box.hi[j] || config.box.lo[j] > 0.0) {
            throw std::invalid_argument("eta_sample: rectangle [0,x] not inside the sampled box");
        }
        vol *= x[j];
    }
    double s = 0.0;
    for (const auto& p : config.points) {
        bool inside = true;
        for (std::size_t j = 0; j < d; ++j) {
            if (p.x[j] > x[j] || p.x[j] < 0.0) {
                inside = false;
                break;
            }
        }
        if (inside) s += p.z;
    }
    return s - vol * model.mean_jump_above(config.eps);
}

double charlier_eval(const PointConfiguration& config, const LevyMeasureModel& model,
                     const PointFunction& f, const PointFunction& g, int order) {
    switch (order) {
        case 0:
            return 1.0;
        case 1:
            return pair_compensated(config, model, f);
        case 2: {
            const double cf = pair_compensated(config, model, f);
            const double cg = pair_compensated(config, model, g);
            const double mixed = pair_raw(config, [&](std::span<const double> x, double z) {
                return f(x, z) * g(x, z);
            });
            return cf * cg - mixed;
        }
        default:
            throw std::invalid_argument("charlier_eval: only orders 0..2 are supported");
    }
}

namespace {

PointFunction delta_function(const OrthonormalJumpBasis& basis, std::uint64_t k) {
    return [&basis, k](std::span<const double> x, double z) { return delta_k(basis, k, x, z); };
}

}  // namespace

double k_alpha_eval(const PointConfiguration& config, const LevyMeasureModel& model,
                    const OrthonormalJumpBasis& basis, const MultiIndex& alpha) {
    const std::uint64_t order = alpha.order();
    if (order == 0) return 1.0;
    if (order > 2) throw std::invalid_argument("k_alpha_eval: only |alpha| <= 2 is supported");

    // Collect the one or two active positions.
    std::uint64_t first = 0, second = 0;
    for (std::size_t j = 1; j <= alpha.index(); ++j) {
        for (unsigned rep = 0; rep < alpha.at(j); ++rep) {
            if (first == 0) {
                first = j;
            } else {
                second = j;
            }
        }
    }
    if (order == 1) {
        return charlier_eval(config, model, delta_function(basis, first), {}, 1);
    }
    return charlier_eval(config, model, delta_function(basis, first),
                         delta_function(basis, second), 2);
}

CharFunctionalResult char_functional_check(const LevyMeasureModel& model, const Box& box,
                                           double eps, const PointFunction& f, std::size_t n,
                                           const RandomSource& rng) {
    const PrmSampler sampler(model, box, eps);

    MomentAccumulator re;
    MomentAccumulator im;
    for (std::size_t i = 0; i < n; ++i) {
        RandomSource stream = rng.split(i);
        const PointConfiguration config = sampler.sample(stream);
        const double phase = pair_raw(config, f);
        re.add(std::cos(phase));
        im.add(std::sin(phase));
    }

    // exp( int (e^{i f} - 1) d pi ) over the truncated region.
    const double re_part = integrate_pi(
        model, box, eps, [&](std::span<const double> x, double z) { return std::cos(f(x, z)) - 1.0; });
    const double im_part = integrate_pi(
        model, box, eps, [&](std::span<const double> x, double z) { return std::sin(f(x, z)); });

    CharFunctionalResult result;
    result.empirical = {re.mean(), im.mean()};
    result.theory = std::exp(std::complex<double>(re_part, im_part));
    result.std_error = std::sqrt(re.mean_se() * re.mean_se() + im.mean_se() * im.mean_se());
    result.n = n;
    return result;
}

namespace {

void compositions_rec(int remaining, int parts, std::vector<int>& current,
                      const std::function<void(const std::vector<int>&)>& emit) {
    if (parts == 1) {
        current.push_back(remaining);
        emit(current);
        current.pop_back();
        return;
    }
    for (int v = 1; v <= remaining - parts + 1; ++v) {
        current.push_back(v);
        compositions_rec(remaining - v, parts - 1, current, emit);
        current.pop_back();
    }
}

double factorial_int(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

}  // namespace

double moment_formula(const LevyMeasureModel& model, const Box& box, const PointFunction& f,
                      int n) {
    if (n < 1 || n > 4) throw std::invalid_argument("moment_formula: order must be 1..4");

    // <pi, f^p> for p = 1..n.
    std::vector<double> pi_pow(n + 1, 0.0);
    for (int p = 1; p <= n; ++p) {
        pi_pow[p] = integrate_pi(model, box, 0.0, [&](std::span<const double> x, double z) {
            return std::pow(f(x, z), p);
        });
    }

    double total = 0.0;
    for (int k = 1; k <= n; ++k) {
        double class_sum = 0.0;
        std::vector<int> current;
        compositions_rec(n, k, current, [&](const std::vector<int>& comp) {
            double prod = 1.0;
            for (int a : comp) prod *= pi_pow[a] / factorial_int(a);
            class_sum += prod;
        });
        total += factorial_int(n) / factorial_int(k) * class_sum;
    }
    return total;
}

ChaosExpansion eta_chaos(const LevyMeasureModel& model, std::span<const double> x,
                         std::uint64_t K) {
    const double m = model.m();
    ChaosExpansion F;
    for (std::uint64_t k = 1; k <= K; ++k) {
        const double coeff = m * tensor_hermite_box_integral(k, x);
        F.set(MultiIndex::unit(cantor_pair(k, 1)), coeff);
    }
    return F;
}

ChaosExpansion white_noise_chaos(const LevyMeasureModel& model, std::span<const double> x,
                                 std::uint64_t K) {
    const double m = model.m();
    ChaosExpansion F;
    for (std::uint64_t k = 1; k <= K; ++k) {
        F.set(MultiIndex::unit(cantor_pair(k, 1)), m * tensor_hermite(k, x));
    }
    return F;
}

ChaosExpansion prm_noise_chaos(const LevyMeasureModel& model, const OrthonormalJumpBasis& basis,
                               std::span<const double> x, double z, std::uint64_t Ks,
                               std::uint64_t Km) {
    (void)model;
    if (Km > basis.M) {
        throw std::out_of_range("prm_noise_chaos: Km exceeds the jump-basis cap");
    }
    ChaosExpansion F;
    for (std::uint64_t k = 1; k <= Ks; ++k) {
        const double zk = tensor_hermite(k, x);
        for (std::uint64_t m = 1; m <= Km; ++m) {
            F.set(MultiIndex::unit(cantor_pair(k, m)), zk * basis.eval(m, z));
        }
    }
    return F;
}

MomentAccumulator mc_accumulate(const PrmSampler& sampler, const RandomSource& rng, std::size_t n,
                                const std::function<double(const PointConfiguration&)>& estimator) {
    constexpr std::size_t kChunk = 4096;
    const std::size_t chunks = (n + kChunk - 1) / kChunk;
    std::vector<MomentAccumulator> partial(chunks);
    for_each_chunk(n, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        MomentAccumulator acc;
        for (std::size_t i = begin; i < end; ++i) {
            RandomSource stream = rng.split(i);
            const PointConfiguration config = sampler.sample(stream);
            acc.add(estimator(config));
        }
        partial[chunk] = acc;
    });
    MomentAccumulator total;
    for (const MomentAccumulator& acc : partial) total.merge(acc);
    return total;
}

}  // namespace levywn
