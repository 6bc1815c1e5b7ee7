#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <vector>

namespace knot {

/// Fixed-capacity vertex set. Diagrams handled here stay well below the
/// capacity; callers check `kCapacity` at construction time.
class VertexSet {
public:
    static constexpr int kWords = 4;
    static constexpr int kCapacity = 64 * kWords;

    constexpr VertexSet() = default;

    void set(int v) { words_[v >> 6] |= (std::uint64_t{1} << (v & 63)); }
    void reset(int v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
    [[nodiscard]] bool test(int v) const { return (words_[v >> 6] >> (v & 63)) & 1U; }

    [[nodiscard]] int count() const {
        int c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }
    [[nodiscard]] bool empty() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }

    VertexSet& operator|=(const VertexSet& o) {
        for (int i = 0; i < kWords; ++i) words_[i] |= o.words_[i];
        return *this;
    }
    VertexSet& operator&=(const VertexSet& o) {
        for (int i = 0; i < kWords; ++i) words_[i] &= o.words_[i];
        return *this;
    }
    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }

    [[nodiscard]] VertexSet minus(const VertexSet& o) const {
        VertexSet r = *this;
        for (int i = 0; i < kWords; ++i) r.words_[i] &= ~o.words_[i];
        return r;
    }
    [[nodiscard]] bool intersects(const VertexSet& o) const {
        for (int i = 0; i < kWords; ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }
    [[nodiscard]] bool subset_of(const VertexSet& o) const {
        for (int i = 0; i < kWords; ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    /// Members in increasing order.
    [[nodiscard]] std::vector<int> members() const {
        std::vector<int> out;
        for (int i = 0; i < kWords; ++i) {
            std::uint64_t w = words_[i];
            while (w) {
                out.push_back(i * 64 + std::countr_zero(w));
                w &= w - 1;
            }
        }
        return out;
    }

    static VertexSet range(int n) {
        VertexSet s;
        for (int v = 0; v < n; ++v) s.set(v);
        return s;
    }

    friend bool operator==(const VertexSet&, const VertexSet&) = default;
    friend auto operator<=>(const VertexSet& a, const VertexSet& b) {
        // Compare from the highest word so that ordering matches the numeric
        // value of the bit string; gives a stable sort key.
        for (int i = kWords - 1; i >= 0; --i)
            if (a.words_[i] != b.words_[i]) return a.words_[i] <=> b.words_[i];
        return std::strong_ordering::equal;
    }

    [[nodiscard]] std::size_t hash() const {
        std::size_t h = 0;
        for (auto w : words_) h = h * 1000003U ^ std::hash<std::uint64_t>{}(w);
        return h;
    }

private:
    std::array<std::uint64_t, kWords> words_{};
};

}  // namespace knot
