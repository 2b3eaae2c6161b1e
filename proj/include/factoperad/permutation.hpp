#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "factoperad/error.hpp"

namespace factoperad {

/// A permutation of {0, ..., n-1} in one-line notation: `p[i]` is the image
/// of i. Serialized 1-based.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> images) : images_(std::move(images))
    {
        std::vector<bool> seen(images_.size(), false);
        for (int v : images_) {
            if (v < 0 || static_cast<std::size_t>(v) >= images_.size() || seen[v])
                throw InvalidArgument("not a permutation: " + to_string());
            seen[v] = true;
        }
    }

    static Permutation identity(int n)
    {
        std::vector<int> v(n);
        std::iota(v.begin(), v.end(), 0);
        return Permutation(std::move(v));
    }

    /// Swaps i and j (0-based).
    static Permutation transposition(int n, int i, int j)
    {
        auto p = identity(n);
        std::swap(p.images_.at(i), p.images_.at(j));
        return p;
    }

    static Permutation from_one_based(const std::vector<int>& images)
    {
        std::vector<int> v;
        v.reserve(images.size());
        for (int x : images)
            v.push_back(x - 1);
        return Permutation(std::move(v));
    }

    std::vector<int> one_based() const
    {
        std::vector<int> v;
        v.reserve(images_.size());
        for (int x : images_)
            v.push_back(x + 1);
        return v;
    }

    int size() const { return static_cast<int>(images_.size()); }
    int operator[](int i) const { return images_[i]; }
    int operator()(int i) const { return images_[i]; }
    const std::vector<int>& images() const { return images_; }

    /// (this o other)(i) = this(other(i)).
    Permutation after(const Permutation& other) const
    {
        if (other.size() != size())
            throw InvalidArgument("composing permutations of different sizes");
        std::vector<int> v(images_.size());
        for (int i = 0; i < size(); ++i)
            v[i] = images_[other[i]];
        return Permutation(std::move(v));
    }

    Permutation inverse() const
    {
        std::vector<int> v(images_.size());
        for (int i = 0; i < size(); ++i)
            v[images_[i]] = i;
        return Permutation(std::move(v));
    }

    bool is_identity() const
    {
        for (int i = 0; i < size(); ++i)
            if (images_[i] != i)
                return false;
        return true;
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;

    std::string to_string() const
    {
        std::string s = "[";
        for (std::size_t i = 0; i < images_.size(); ++i)
            s += (i ? "," : "") + std::to_string(images_[i] + 1);
        return s + "]";
    }

private:
    std::vector<int> images_;
};

/// All permutations of n in lexicographic order.
inline std::vector<Permutation> all_permutations(int n)
{
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    std::vector<Permutation> out;
    do {
        out.emplace_back(v);
    } while (std::next_permutation(v.begin(), v.end()));
    return out;
}

}  // namespace factoperad
