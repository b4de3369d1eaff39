#include "bellml/features.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "bellml/text_io.hpp"

namespace bellml {

namespace {

std::size_t pow_sz(std::size_t base, std::size_t exp) {
    std::size_t r = 1;
    while (exp-- > 0) r *= base;
    return r;
}

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

}  // namespace

double MeasurementAxis::norm() const {
    return std::sqrt(nx * nx + ny * ny + nz * nz);
}

ComplexMatrix axis_operator(const MeasurementAxis& axis) {
    if (std::abs(axis.norm() - 1.0) > 1e-12)
        throw std::invalid_argument("axis_operator: axis is not unit length");
    ComplexMatrix m(2, 2);
    m(0, 0) = axis.nz;
    m(0, 1) = cplx(axis.nx, -axis.ny);
    m(1, 0) = cplx(axis.nx, axis.ny);
    m(1, 1) = -axis.nz;
    return m;
}

MeasurementAxis random_axis(Rng& rng) {
    while (true) {
        const double x = rng.normal();
        const double y = rng.normal();
        const double z = rng.normal();
        const double n = std::sqrt(x * x + y * y + z * z);
        if (n < 1e-12) continue;  // essentially impossible, but keep the contract
        return MeasurementAxis{x / n, y / n, z / n};
    }
}

FeatureScheme FeatureScheme::tomographic(std::size_t n_qubits) {
    return {SchemeKind::kTomographic, n_qubits, pow_sz(4, n_qubits) - 1};
}
FeatureScheme FeatureScheme::chsh_fixed() { return {SchemeKind::kChshFixed, 2, 4}; }
FeatureScheme FeatureScheme::chsh_random() { return {SchemeKind::kChshRandom, 2, 4}; }
FeatureScheme FeatureScheme::mermin4() { return {SchemeKind::kMermin4, 3, 4}; }
FeatureScheme FeatureScheme::svetlichny8() { return {SchemeKind::kSvetlichny8, 3, 8}; }
FeatureScheme FeatureScheme::triple_chsh12() { return {SchemeKind::kTripleChsh12, 3, 12}; }
FeatureScheme FeatureScheme::full_local(std::size_t n_qubits) {
    return {SchemeKind::kFullLocal, n_qubits, pow_sz(3, n_qubits) - 1};
}

std::string FeatureScheme::name() const {
    switch (kind) {
        case SchemeKind::kTomographic: return "tomographic";
        case SchemeKind::kChshFixed: return "chsh-fixed";
        case SchemeKind::kChshRandom: return "chsh-random";
        case SchemeKind::kMermin4: return "mermin4";
        case SchemeKind::kSvetlichny8: return "svetlichny8";
        case SchemeKind::kTripleChsh12: return "triple-chsh12";
        case SchemeKind::kFullLocal: return "full-local";
    }
    return "?";
}

FeatureScheme FeatureScheme::from_name(const std::string& name, std::size_t n_qubits) {
    if (name == "tomographic") return tomographic(n_qubits);
    if (name == "chsh-fixed") return chsh_fixed();
    if (name == "chsh-random") return chsh_random();
    if (name == "mermin4") return mermin4();
    if (name == "svetlichny8") return svetlichny8();
    if (name == "triple-chsh12") return triple_chsh12();
    if (name == "full-local") return full_local(n_qubits);
    throw std::invalid_argument("unknown feature scheme '" + name + "'");
}

std::vector<PartyAxes> chsh_fixed_axes() {
    return {
        {MeasurementAxis{0.0, 0.0, 1.0}, MeasurementAxis{1.0, 0.0, 0.0}},
        {MeasurementAxis{kInvSqrt2, 0.0, -kInvSqrt2}, MeasurementAxis{kInvSqrt2, 0.0, kInvSqrt2}},
    };
}

namespace {

bool scheme_uses_axes(SchemeKind kind) { return kind != SchemeKind::kTomographic; }

// Tensor product over parties with per-party single-qubit factors.
ComplexMatrix product_op(const std::vector<const ComplexMatrix*>& factors) {
    ComplexMatrix out = *factors[0];
    for (std::size_t k = 1; k < factors.size(); ++k) out = kron(out, *factors[k]);
    return out;
}

std::vector<ComplexMatrix> build_cache(const FeatureScheme& scheme,
                                       const std::vector<PartyAxes>& axes) {
    const std::size_t n = scheme.n_qubits;

    // Per-party symbol tables. Index 0 is identity where the scheme allows it.
    std::vector<ComplexMatrix> prim(n), sec(n);
    if (scheme_uses_axes(scheme.kind)) {
        for (std::size_t q = 0; q < n; ++q) {
            prim[q] = axis_operator(axes[q].primary);
            sec[q] = axis_operator(axes[q].secondary);
        }
    }
    const ComplexMatrix& id = identity2();

    std::vector<ComplexMatrix> cache;
    cache.reserve(scheme.n_features);

    auto add_word = [&](const std::vector<const ComplexMatrix*>& word) {
        cache.push_back(product_op(word));
    };
    // Symbol selector for Bell-like words: 0 = I, 1 = n, 2 = n'.
    auto sym = [&](std::size_t party, int s) -> const ComplexMatrix* {
        return s == 0 ? &id : (s == 1 ? &prim[party] : &sec[party]);
    };

    switch (scheme.kind) {
        case SchemeKind::kTomographic: {
            const ComplexMatrix* paulis[4] = {&id, &pauli_x(), &pauli_y(), &pauli_z()};
            for (std::size_t code = 1; code < pow_sz(4, n); ++code) {
                std::vector<const ComplexMatrix*> word(n);
                std::size_t c = code;
                for (std::size_t q = n; q-- > 0;) {
                    word[q] = paulis[c % 4];
                    c /= 4;
                }
                add_word(word);
            }
            break;
        }
        case SchemeKind::kFullLocal: {
            for (std::size_t code = 1; code < pow_sz(3, n); ++code) {
                std::vector<const ComplexMatrix*> word(n);
                std::size_t c = code;
                for (std::size_t q = n; q-- > 0;) {
                    word[q] = sym(q, static_cast<int>(c % 3));
                    c /= 3;
                }
                add_word(word);
            }
            break;
        }
        case SchemeKind::kChshFixed:
        case SchemeKind::kChshRandom: {
            // <a b>, <a b'>, <a' b>, <a' b'>
            add_word({sym(0, 1), sym(1, 1)});
            add_word({sym(0, 1), sym(1, 2)});
            add_word({sym(0, 2), sym(1, 1)});
            add_word({sym(0, 2), sym(1, 2)});
            break;
        }
        case SchemeKind::kMermin4: {
            // abc, a'b'c, ab'c', a'bc'
            add_word({sym(0, 1), sym(1, 1), sym(2, 1)});
            add_word({sym(0, 2), sym(1, 2), sym(2, 1)});
            add_word({sym(0, 1), sym(1, 2), sym(2, 2)});
            add_word({sym(0, 2), sym(1, 1), sym(2, 2)});
            break;
        }
        case SchemeKind::kSvetlichny8: {
            for (std::size_t code = 0; code < 8; ++code) {
                std::vector<const ComplexMatrix*> word(3);
                for (std::size_t q = 0; q < 3; ++q) {
                    const int bit = (code >> (2 - q)) & 1;
                    word[q] = sym(q, bit == 0 ? 1 : 2);
                }
                add_word(word);
            }
            break;
        }
        case SchemeKind::kTripleChsh12: {
            const std::size_t pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
            for (const auto& pr : pairs) {
                for (int u = 1; u <= 2; ++u)
                    for (int v = 1; v <= 2; ++v) {
                        std::vector<const ComplexMatrix*> word(3, &id);
                        word[pr[0]] = sym(pr[0], u);
                        word[pr[1]] = sym(pr[1], v);
                        add_word(word);
                    }
            }
            break;
        }
    }

    if (cache.size() != scheme.n_features)
        throw std::logic_error("feature cache size does not match the scheme");
    return cache;
}

void check_axes_count(const FeatureScheme& scheme, const std::vector<PartyAxes>& axes) {
    if (scheme_uses_axes(scheme.kind) && axes.size() != scheme.n_qubits)
        throw std::invalid_argument("build_plan: need one axis pair per party");
}

}  // namespace

MeasurementPlan build_plan(const FeatureScheme& scheme, Rng& rng) {
    std::vector<PartyAxes> axes;
    if (scheme.kind == SchemeKind::kChshFixed) {
        axes = chsh_fixed_axes();
    } else if (scheme_uses_axes(scheme.kind)) {
        axes.reserve(scheme.n_qubits);
        for (std::size_t q = 0; q < scheme.n_qubits; ++q) {
            PartyAxes pa;
            pa.primary = random_axis(rng);
            pa.secondary = random_axis(rng);
            axes.push_back(pa);
        }
    }
    return build_plan(scheme, axes);
}

MeasurementPlan build_plan(const FeatureScheme& scheme, const std::vector<PartyAxes>& axes) {
    check_axes_count(scheme, axes);
    MeasurementPlan plan;
    plan.scheme = scheme;
    plan.axes = axes;
    plan.operator_cache = build_cache(scheme, axes);
    return plan;
}

std::vector<double> extract_features(const DensityMatrix& rho, const MeasurementPlan& plan) {
    if (rho.dim() != (std::size_t{1} << plan.scheme.n_qubits))
        throw std::invalid_argument("extract_features: state dimension does not match the plan");
    std::vector<double> out;
    out.reserve(plan.operator_cache.size());
    for (const auto& op : plan.operator_cache) out.push_back(expectation(rho.matrix, op));
    return out;
}

void save_plan(const MeasurementPlan& plan, const std::string& path) {
    std::ostringstream os;
    os << "bellml-plan v1\n";
    os << "scheme " << plan.scheme.name() << "\n";
    os << "n_qubits " << plan.scheme.n_qubits << "\n";
    os << "n_features " << plan.scheme.n_features << "\n";
    os << "axes " << plan.axes.size() << "\n";
    for (const auto& pa : plan.axes) {
        os << fmt_g17(pa.primary.nx) << ' ' << fmt_g17(pa.primary.ny) << ' '
           << fmt_g17(pa.primary.nz) << ' ' << fmt_g17(pa.secondary.nx) << ' '
           << fmt_g17(pa.secondary.ny) << ' ' << fmt_g17(pa.secondary.nz) << "\n";
    }
    atomic_write(path, os.str());
}

MeasurementPlan load_plan(const std::string& path) {
    std::istringstream is(read_file(path));
    std::string line;
    if (!std::getline(is, line) || line != "bellml-plan v1")
        throw IoError("not a plan file: " + path);

    std::string scheme_name;
    std::size_t n_qubits = 0, n_features = 0, n_axes = 0;
    auto next_kv = [&](const char* key) {
        if (!std::getline(is, line)) throw IoError("truncated plan file: " + path);
        const auto toks = split_ws(line);
        if (toks.size() != 2 || toks[0] != key)
            throw IoError("expected '" + std::string(key) + "' in " + path);
        return toks[1];
    };
    scheme_name = next_kv("scheme");
    n_qubits = static_cast<std::size_t>(parse_int(next_kv("n_qubits"), path));
    n_features = static_cast<std::size_t>(parse_int(next_kv("n_features"), path));
    n_axes = static_cast<std::size_t>(parse_int(next_kv("axes"), path));

    std::vector<PartyAxes> axes(n_axes);
    for (auto& pa : axes) {
        if (!std::getline(is, line)) throw IoError("truncated plan file: " + path);
        const auto toks = split_ws(line);
        if (toks.size() != 6) throw IoError("bad axis line in " + path);
        pa.primary = {parse_double(toks[0], path), parse_double(toks[1], path),
                      parse_double(toks[2], path)};
        pa.secondary = {parse_double(toks[3], path), parse_double(toks[4], path),
                        parse_double(toks[5], path)};
    }

    const FeatureScheme scheme = FeatureScheme::from_name(scheme_name, n_qubits);
    if (scheme.n_features != n_features)
        throw IoError("feature count mismatch in " + path);
    return build_plan(scheme, axes);
}

}  // namespace bellml
