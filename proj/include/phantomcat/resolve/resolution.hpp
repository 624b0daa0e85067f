#pragma once

#include "../algmod/conflation.hpp"
#include "../algmod/module.hpp"

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace phantomcat {

class resolve_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Minimal projective resolution ... -> P_1 -> P_0 -> M, stored through its syzygies:
/// cover k is P_k -> Omega^k M and inclusion k is Omega^{k+1} M -> P_k.
template <class F>
struct Resolution {
    ModPtr<F> base;
    std::vector<ProjSum<F>> terms;
    std::vector<ModuleMap<F>> covers;
    std::vector<ModPtr<F>> syzygies;  ///< Omega^0 = M, ..., Omega^{length+1}
    std::vector<ModuleMap<F>> inclusions;

    std::size_t length() const { return terms.size() - 1; }

    /// d_k : P_k -> P_{k-1} for k >= 1; d_0 is the augmentation P_0 -> M.
    ModuleMap<F> differential(std::size_t k) const {
        if (k == 0) return covers.at(0);
        return compose(inclusions.at(k - 1), covers.at(k));
    }

    /// Least k with Omega^k M projective, if it occurs within the computed range.
    std::optional<std::size_t> projective_dimension() const {
        for (std::size_t k = 0; k < terms.size(); ++k)
            if (syzygies[k + 1]->dim() == 0) return k;
        return std::nullopt;
    }

    static Resolution start(const ModPtr<F>& M) {
        Resolution r;
        r.base = M;
        r.syzygies.push_back(M);
        r.extend(0);
        return r;
    }

    void extend(std::size_t length) {
        while (terms.empty() || this->length() < length) {
            const ModPtr<F>& top = syzygies.back();
            auto pc = projective_cover(top);
            auto K = kernel_module(pc.cover);
            std::string base_name = base->name().empty() ? "M" : base->name();
            auto named = K.module->renamed("Omega^" + std::to_string(syzygies.size()) + "(" + base_name + ")");
            terms.push_back(pc.P);
            covers.push_back(pc.cover);
            inclusions.push_back({named, pc.P.module, K.inclusion.matrix});
            syzygies.push_back(named);
        }
    }
};

/// Minimal injective coresolution M -> I^0 -> I^1 -> ..., stored through its cosyzygies:
/// envelope k is Omega^{-k} M -> I^k and projection k is I^k -> Omega^{-(k+1)} M.
template <class F>
struct Coresolution {
    ModPtr<F> base;
    std::vector<InjectiveEnvelope<F>> terms;
    std::vector<ModuleMap<F>> projections;
    std::vector<ModPtr<F>> cosyzygies;

    std::size_t length() const { return terms.size() - 1; }

    ModuleMap<F> differential(std::size_t k) const {
        return compose(terms.at(k + 1).inflation, projections.at(k));
    }

    std::optional<std::size_t> injective_dimension() const {
        for (std::size_t k = 0; k < terms.size(); ++k)
            if (cosyzygies[k + 1]->dim() == 0) return k;
        return std::nullopt;
    }

    static Coresolution build(const ModPtr<F>& M, std::size_t length) {
        Coresolution c;
        c.base = M;
        c.cosyzygies.push_back(M);
        std::string base_name = M->name().empty() ? "M" : M->name();
        for (std::size_t k = 0; k <= length; ++k) {
            auto env = injective_envelope(c.cosyzygies.back());
            auto C = cokernel_module(env.inflation);
            auto named = C.module->renamed("Omega^-" + std::to_string(k + 1) + "(" + base_name + ")");
            c.terms.push_back(env);
            c.projections.push_back({env.module, named, C.projection.matrix});
            c.cosyzygies.push_back(named);
        }
        return c;
    }
};

/// Lookup table keyed by module content (fingerprint plus structural equality).
template <class V>
class ModuleKeyedCache {
public:
    template <class F>
    std::shared_ptr<const V> find(const std::vector<ModPtr<F>>& key, std::size_t tag) const {
        std::shared_lock lock(mutex_);
        auto range = map_.equal_range(hash_key<F>(key, tag));
        for (auto it = range.first; it != range.second; ++it)
            if (matches<F>(it->second, key, tag)) return std::static_pointer_cast<const V>(it->second.value);
        return nullptr;
    }

    template <class F>
    void store(const std::vector<ModPtr<F>>& key, std::size_t tag, std::shared_ptr<const V> value) {
        std::unique_lock lock(mutex_);
        auto h = hash_key<F>(key, tag);
        auto range = map_.equal_range(h);
        for (auto it = range.first; it != range.second; ++it)
            if (matches<F>(it->second, key, tag)) {
                it->second.value = value;
                return;
            }
        Entry e;
        for (auto& k : key) e.key.push_back(k);
        e.tag = tag;
        e.value = value;
        map_.emplace(h, std::move(e));
    }

    std::size_t size() const {
        std::shared_lock lock(mutex_);
        return map_.size();
    }

private:
    struct Entry {
        std::vector<std::shared_ptr<const void>> key;
        std::size_t tag = 0;
        std::shared_ptr<const void> value;
    };

    template <class F>
    static std::size_t hash_key(const std::vector<ModPtr<F>>& key, std::size_t tag) {
        std::size_t h = tag * 0x9e3779b97f4a7c15ULL;
        for (auto& k : key) h = h * 1000003u ^ k->fingerprint();
        return h;
    }

    template <class F>
    static bool matches(const Entry& e, const std::vector<ModPtr<F>>& key, std::size_t tag) {
        if (e.tag != tag || e.key.size() != key.size()) return false;
        for (std::size_t i = 0; i < key.size(); ++i)
            if (!static_cast<const Module<F>*>(e.key[i].get())->same_as(*key[i])) return false;
        return true;
    }

    mutable std::shared_mutex mutex_;
    std::unordered_multimap<std::size_t, Entry> map_;
};

/// Algebra, Frobenius parameter n and resolution bound, plus the shared caches.
template <class F>
class Context {
public:
    Context(AlgebraPtr<F> alg, std::size_t n, std::optional<std::size_t> bound = std::nullopt)
        : alg_(std::move(alg)), n_(n), bound_(bound.value_or(2 * n + 4)) {}

    const AlgebraPtr<F>& algebra() const { return alg_; }
    const F& field() const { return alg_->field(); }
    std::size_t n() const { return n_; }
    std::size_t bound() const { return bound_; }

    /// Resolution of M computed at least to P_length.
    std::shared_ptr<const Resolution<F>> resolution(const ModPtr<F>& M, std::size_t length) const {
        if (length > bound_)
            throw resolve_error("resolution of " + M->display_name() + " requested to length " +
                                std::to_string(length) + " beyond the bound " + std::to_string(bound_));
        auto hit = resolutions_.template find<F>({M}, 0);
        if (hit && hit->length() >= length) return hit;
        Resolution<F> r = hit ? *hit : Resolution<F>::start(M);
        r.extend(length);
        auto p = std::make_shared<const Resolution<F>>(std::move(r));
        resolutions_.template store<F>({M}, 0, p);
        return p;
    }

    std::shared_ptr<const Coresolution<F>> coresolution(const ModPtr<F>& M, std::size_t length) const {
        if (length > bound_)
            throw resolve_error("coresolution of " + M->display_name() + " requested beyond the bound " +
                                std::to_string(bound_));
        auto hit = coresolutions_.template find<F>({M}, 0);
        if (hit && hit->length() >= length) return hit;
        auto p = std::make_shared<const Coresolution<F>>(Coresolution<F>::build(M, length));
        coresolutions_.template store<F>({M}, 0, p);
        return p;
    }

    ModPtr<F> syzygy(const ModPtr<F>& M, std::size_t k) const {
        if (k == 0) return M;
        return resolution(M, k - 1)->syzygies.at(k);
    }

    ModPtr<F> cosyzygy(const ModPtr<F>& M, std::size_t k) const {
        if (k == 0) return M;
        return coresolution(M, k - 1)->cosyzygies.at(k);
    }

    /// Generic memo table for derived data (Ext spaces, P-subspaces, ...).
    template <class V>
    std::shared_ptr<const V> memo(const std::string& kind, const std::vector<ModPtr<F>>& key, std::size_t tag,
                                  const std::function<V()>& compute) const {
        auto& cache = table(kind);
        if (auto hit = cache.template find<F>(key, tag)) return std::static_pointer_cast<const V>(hit);
        auto v = std::make_shared<const V>(compute());
        cache.template store<F>(key, tag, std::static_pointer_cast<const void>(v));
        return v;
    }

private:
    using Table = ModuleKeyedCache<void>;
    Table& table(const std::string& kind) const {
        {
            std::shared_lock lock(tables_mutex_);
            auto it = tables_.find(kind);
            if (it != tables_.end()) return *it->second;
        }
        std::unique_lock lock(tables_mutex_);
        auto& slot = tables_[kind];
        if (!slot) slot = std::make_unique<Table>();
        return *slot;
    }

    AlgebraPtr<F> alg_;
    std::size_t n_;
    std::size_t bound_;
    mutable ModuleKeyedCache<Resolution<F>> resolutions_;
    mutable ModuleKeyedCache<Coresolution<F>> coresolutions_;
    mutable std::shared_mutex tables_mutex_;
    mutable std::unordered_map<std::string, std::unique_ptr<Table>> tables_;
};

} // namespace phantomcat
