#include "latspec/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "latspec/error.hpp"

namespace latspec {

namespace {

// 2^D branches are enumerated explicitly.
constexpr std::size_t kMaxBranchDimension = 24;

std::vector<std::uint64_t> strides(const LatticeSpec& spec) {
    std::vector<std::uint64_t> out(spec.dims.size());
    std::uint64_t s = 1;
    for (std::size_t d = 0; d < spec.dims.size(); ++d) {
        out[d] = s;
        s *= spec.dims[d];
    }
    return out;
}

void check_node(const LatticeSpec& spec, std::uint64_t x, const char* name) {
    const auto n = node_count(spec);
    if (x < 1 || x > n) {
        throw ConfigError(std::string("node index ") + name + "=" + std::to_string(x) +
                          " outside 1.." + std::to_string(n));
    }
}

} // namespace

LatticeSpec LatticeSpec::make(std::vector<std::uint64_t> dims, std::vector<double> probs) {
    LatticeSpec spec{std::move(dims), std::move(probs)};
    spec.validate();
    return spec;
}

void LatticeSpec::validate() const {
    if (dims.empty()) throw ConfigError("lattice needs at least one dimension");
    if (dims.size() != probs.size()) {
        throw ConfigError("dims has " + std::to_string(dims.size()) + " entries but probs has " +
                          std::to_string(probs.size()));
    }
    std::uint64_t n = 1;
    for (std::size_t d = 0; d < dims.size(); ++d) {
        if (dims[d] < 2) {
            throw ConfigError("dimension " + std::to_string(d + 1) + " has size " +
                              std::to_string(dims[d]) + "; sizes must be >= 2");
        }
        if (!(probs[d] > 0.0 && probs[d] <= 1.0)) {
            throw ConfigError("probability " + std::to_string(probs[d]) + " for dimension " +
                              std::to_string(d + 1) + " is outside (0, 1]");
        }
        if (n > std::numeric_limits<std::uint64_t>::max() / dims[d]) {
            throw ConfigError("node count overflows 64 bits");
        }
        n *= dims[d];
    }
}

std::uint64_t ExpectedSpectrum::total_multiplicity() const noexcept {
    std::uint64_t total = 0;
    for (const auto& e : entries) total += e.multiplicity;
    return total;
}

std::uint64_t node_count(const LatticeSpec& spec) {
    spec.validate();
    std::uint64_t n = 1;
    for (auto m : spec.dims) n *= m;
    return n;
}

MixedRadixIndex decode_index(const LatticeSpec& spec, std::uint64_t x) {
    check_node(spec, x, "x");
    MixedRadixIndex out;
    out.digits.reserve(spec.dims.size());
    std::uint64_t rest = x - 1;
    for (auto m : spec.dims) {
        out.digits.push_back(rest % m);
        rest /= m;
    }
    return out;
}

std::uint64_t encode_index(const LatticeSpec& spec, const MixedRadixIndex& index) {
    spec.validate();
    if (index.digits.size() != spec.dims.size()) {
        throw ConfigError("index has " + std::to_string(index.digits.size()) + " digits, lattice has " +
                          std::to_string(spec.dims.size()) + " dimensions");
    }
    const auto stride = strides(spec);
    std::uint64_t x = 1;
    for (std::size_t d = 0; d < spec.dims.size(); ++d) {
        if (index.digits[d] >= spec.dims[d]) {
            throw ConfigError("digit " + std::to_string(index.digits[d]) + " out of range for dimension " +
                              std::to_string(d + 1) + " of size " + std::to_string(spec.dims[d]));
        }
        x += index.digits[d] * stride[d];
    }
    return x;
}

int link_dimension(const LatticeSpec& spec, std::uint64_t i, std::uint64_t j) {
    check_node(spec, i, "i");
    check_node(spec, j, "j");
    std::uint64_t a = i - 1;
    std::uint64_t b = j - 1;
    int differing = -1;
    for (std::size_t d = 0; d < spec.dims.size(); ++d) {
        const auto m = spec.dims[d];
        if (a % m != b % m) {
            if (differing >= 0) return -1;
            differing = static_cast<int>(d);
        }
        a /= m;
        b /= m;
    }
    return differing;
}

bool are_adjacent(const LatticeSpec& spec, std::uint64_t i, std::uint64_t j) {
    return link_dimension(spec, i, j) >= 0;
}

void for_each_link(const LatticeSpec& spec,
                   const std::function<void(std::uint64_t, std::uint64_t, std::size_t)>& visit) {
    const auto n = node_count(spec);
    const auto stride = strides(spec);
    const auto dim = spec.dims.size();

    struct Neighbor {
        std::uint64_t node;
        std::size_t d;
    };
    std::vector<Neighbor> up;
    std::vector<std::uint64_t> digit(dim, 0);

    for (std::uint64_t x = 0; x < n; ++x) {
        up.clear();
        for (std::size_t d = 0; d < dim; ++d) {
            for (std::uint64_t v = digit[d] + 1; v < spec.dims[d]; ++v) {
                up.push_back({x + (v - digit[d]) * stride[d], d});
            }
        }
        std::sort(up.begin(), up.end(), [](const Neighbor& l, const Neighbor& r) { return l.node < r.node; });
        for (const auto& nb : up) visit(x + 1, nb.node + 1, nb.d);

        for (std::size_t d = 0; d < dim; ++d) {
            if (++digit[d] < spec.dims[d]) break;
            digit[d] = 0;
        }
    }
}

std::uint64_t link_count(const LatticeSpec& spec) {
    const auto n = node_count(spec);
    std::uint64_t per_node = 0;
    for (auto m : spec.dims) per_node += m - 1;
    return n * per_node / 2;
}

Eigen::MatrixXd lattice_adjacency(const LatticeSpec& spec) {
    const auto n = node_count(spec);
    if (n > kDenseNodeLimit) {
        throw SizeLimitError("dense adjacency requested for N=" + std::to_string(n) + " > " +
                             std::to_string(kDenseNodeLimit) + "; use for_each_link instead");
    }
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for_each_link(spec, [&](std::uint64_t i, std::uint64_t j, std::size_t) {
        a(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(j - 1)) = 1.0;
        a(static_cast<Eigen::Index>(j - 1), static_cast<Eigen::Index>(i - 1)) = 1.0;
    });
    return a;
}

Eigen::MatrixXd expected_scaled_adjacency(const LatticeSpec& spec) {
    const auto n = node_count(spec);
    if (n > kDenseNodeLimit) {
        throw SizeLimitError("dense expected matrix requested for N=" + std::to_string(n));
    }
    const double gamma = expected_degree(spec);
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for_each_link(spec, [&](std::uint64_t i, std::uint64_t j, std::size_t d) {
        const double v = spec.probs[d] / gamma;
        b(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(j - 1)) = v;
        b(static_cast<Eigen::Index>(j - 1), static_cast<Eigen::Index>(i - 1)) = v;
    });
    return b;
}

double expected_degree(const LatticeSpec& spec) {
    spec.validate();
    double gamma = 0.0;
    for (std::size_t d = 0; d < spec.dims.size(); ++d) {
        gamma += spec.probs[d] * static_cast<double>(spec.dims[d] - 1);
    }
    return gamma;
}

std::vector<Branch> expected_branches(const LatticeSpec& spec) {
    const double gamma = expected_degree(spec);
    const auto dim = spec.dims.size();
    if (dim > kMaxBranchDimension) {
        throw ConfigError("branch enumeration supports at most " + std::to_string(kMaxBranchDimension) +
                          " dimensions");
    }
    const std::uint64_t count = std::uint64_t{1} << dim;
    std::vector<Branch> out;
    out.reserve(count);
    for (std::uint64_t j = 0; j < count; ++j) {
        double sum = 0.0;
        std::uint64_t mult = 1;
        for (std::size_t d = 0; d < dim; ++d) {
            const double m = static_cast<double>(spec.dims[d]);
            if ((j >> d) & 1U) {
                sum -= spec.probs[d];
                mult *= spec.dims[d] - 1;
            } else {
                sum += spec.probs[d] * (m - 1.0);
            }
        }
        out.push_back({j, sum / gamma, mult});
    }
    return out;
}

ExpectedSpectrum expected_spectrum(const LatticeSpec& spec) {
    auto branches = expected_branches(spec);
    std::sort(branches.begin(), branches.end(), [](const Branch& a, const Branch& b) { return a.value < b.value; });
    ExpectedSpectrum out;
    for (const auto& br : branches) {
        // Branch values that coincide analytically can differ in the last bits
        // depending on summation order.
        if (!out.entries.empty()) {
            auto& last = out.entries.back();
            if (std::abs(last.value - br.value) <= 1e-13 * std::max(1.0, std::abs(br.value))) {
                last.multiplicity += br.multiplicity;
                continue;
            }
        }
        out.entries.push_back({br.value, br.multiplicity});
    }
    return out;
}

} // namespace latspec
