#include "frobsplit/bundle.hpp"

#include <stdexcept>

#include "frobsplit/json_util.hpp"

namespace frobsplit {

Summand normalize(int n, int power, long long twist) {
    if (n < 1) throw std::invalid_argument("normalize: dimension must be >= 1");
    if (power < 0 || power > n)
        throw std::invalid_argument("normalize: power " + std::to_string(power) +
                                    " outside [0," + std::to_string(n) +
                                    "] (zero summand)");
    if (power == 0) return Summand{0, twist};
    if (power == n) return Summand{0, twist - n - 1};  // Omega^n(t) = O(t-n-1)
    return Summand{power, twist};
}

Summand line(long long twist) { return Summand{0, twist}; }

Int summand_rank(int n, const Summand& s) {
    return s.omega == 0 ? Int(1) : binom(n, s.omega);
}

std::string summand_label(const Summand& s) {
    std::string base = s.omega == 0 ? "O" : "Om^" + std::to_string(s.omega);
    if (s.twist == 0) return base;
    return base + "(" + std::to_string(s.twist) + ")";
}

FormalBundle::FormalBundle(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("FormalBundle: dimension must be >= 1");
}

void FormalBundle::add(int power, long long twist, const Int& mult) {
    add(normalize(n_, power, twist), mult);
}

void FormalBundle::add(const Summand& s, const Int& mult) {
    if (mult <= 0) throw std::invalid_argument("FormalBundle: multiplicity must be >= 1");
    if (s.omega < 0 || s.omega > n_ - 1)
        throw std::invalid_argument("FormalBundle: summand not in canonical form");
    summands_[s] += mult;
}

FormalBundle FormalBundle::twisted(long long t) const {
    FormalBundle out(n_);
    for (const auto& [s, m] : summands_) out.add(Summand{s.omega, s.twist + t}, m);
    return out;
}

FormalBundle FormalBundle::dual() const {
    FormalBundle out(n_);
    for (const auto& [s, m] : summands_) {
        if (s.omega == 0)
            out.add(line(-s.twist), m);
        else
            out.add(normalize(n_, n_ - s.omega, n_ + 1 - s.twist), m);
    }
    return out;
}

Int FormalBundle::rank() const {
    Int total = 0;
    for (const auto& [s, m] : summands_) total += m * summand_rank(n_, s);
    return total;
}

Int FormalBundle::euler_char(long long t) const {
    Int total = 0;
    for (const auto& [s, m] : summands_) {
        if (s.omega == 0) {
            total += m * chi_line(n_, s.twist + t);
        } else {
            // Koszul expansion chi(Om^p(j)) = sum_i (-1)^i C(n+1,p-i) chi(O(j-p+i)).
            long long j = s.twist + t;
            Int term = 0;
            for (int i = 0; i <= s.omega; ++i) {
                Int piece = binom(n_ + 1, s.omega - i) * chi_line(n_, j - s.omega + i);
                term += (i % 2 == 0) ? piece : -piece;
            }
            total += m * term;
        }
    }
    return total;
}

nlohmann::json FormalBundle::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [s, m] : summands_) {
        arr.push_back({{"omega", s.omega}, {"twist", s.twist}, {"mult", int_to_json(m)}});
    }
    return nlohmann::json{{"n", n_}, {"summands", arr}};
}

FormalBundle FormalBundle::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer())
        throw std::invalid_argument("bundle: expected object with integer field \"n\"");
    int n = j["n"].get<int>();
    if (n < 1) throw std::invalid_argument("bundle: n must be >= 1");
    FormalBundle out(n);
    if (!j.contains("summands") || !j["summands"].is_array())
        throw std::invalid_argument("bundle: expected array field \"summands\"");
    const auto& arr = j["summands"];
    for (size_t i = 0; i < arr.size(); ++i) {
        const std::string at = "summands[" + std::to_string(i) + "]";
        const auto& e = arr[i];
        if (!e.is_object()) throw std::invalid_argument(at + ": expected object");
        for (const char* field : {"omega", "twist"}) {
            if (!e.contains(field) || !e[field].is_number_integer())
                throw std::invalid_argument(at + ": missing integer field \"" +
                                            field + "\"");
        }
        if (!e.contains("mult")) throw std::invalid_argument(at + ": missing field \"mult\"");
        int omega = e["omega"].get<int>();
        long long twist = e["twist"].get<long long>();
        Int mult;
        try {
            mult = int_from_json(e["mult"], "mult");
        } catch (const std::exception& ex) {
            throw std::invalid_argument(at + ": " + ex.what());
        }
        if (mult < 1) throw std::invalid_argument(at + ": mult must be >= 1");
        if (omega < 0 || omega > n)
            throw std::invalid_argument(at + ": omega " + std::to_string(omega) +
                                        " outside [0," + std::to_string(n) +
                                        "] (zero summand)");
        out.add(omega, twist, mult);
    }
    return out;
}

FormalBundle FormalBundle::parse(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("bundle: invalid JSON: ") + e.what());
    }
    return from_json(j);
}

}  // namespace frobsplit
