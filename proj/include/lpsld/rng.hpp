#ifndef LPSLD_RNG_HPP
#define LPSLD_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace lpsld {

// splitmix64 step, used to derive decorrelated substream seeds from a master seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t stream_id) {
    return splitmix64(master ^ splitmix64(stream_id));
}

// Seeded random stream. All sampling in the project goes through this class so
// that streams are reproducible and substreams can be derived deterministically.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed), seed_(seed) {}

    RngStream substream(std::uint64_t stream_id) const {
        return RngStream(substream_seed(seed_, stream_id));
    }

    static RngStream from_master(std::uint64_t master, std::uint64_t stream_id) {
        return RngStream(substream_seed(master, stream_id));
    }

    double uniform() { return unit_(engine_); }

    double normal() { return normal_(engine_); }

    // Gamma(shape, scale) via Marsaglia-Tsang, with the usual shape+1 boost for shape < 1.
    double gamma(double shape, double scale) {
        if (shape < 1.0) {
            const double u = unit_(engine_);
            const double boosted = gamma(shape + 1.0, scale);
            return shape == 0.5 ? boosted * u * u : boosted * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal_(engine_);
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = unit_(engine_);
            const double x2 = x * x;
            if (u < 1.0 - 0.0331 * x2 * x2) return scale * d * v;
            if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return scale * d * v;
        }
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_ = 0;
    std::uniform_real_distribution<double> unit_{0.0, 1.0};
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace lpsld

#endif
