// Value type for the VM store. Values are immutable strings; tail() and
// single-character head() share the underlying buffer so that the pervasive
// scan-by-tail idiom costs O(1) per step instead of O(n) copies.
#ifndef TVL_STRVAL_HPP
#define TVL_STRVAL_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

namespace tvl {

class Str {
  public:
    Str() = default;

    explicit Str(std::string s) {
        if (!s.empty()) {
            base_ = std::make_shared<const std::string>(std::move(s));
            len_ = base_->size();
        }
    }

    static Str from_view(std::string_view v) { return Str(std::string(v)); }

    std::string_view view() const {
        if (!base_) return {};
        return std::string_view(*base_).substr(off_, len_);
    }

    std::size_t size() const { return len_; }
    bool empty() const { return len_ == 0; }
    char front() const { return (*base_)[off_]; }

    // First character as a value, or empty if empty.
    Str head() const {
        if (len_ == 0) return {};
        Str r(*this);
        r.len_ = 1;
        return r;
    }

    // Everything but the first character, or empty if empty.
    Str tail() const {
        if (len_ <= 1) return {};
        Str r(*this);
        r.off_ += 1;
        r.len_ -= 1;
        return r;
    }

    static Str concat(const Str& a, const Str& b) {
        if (a.empty()) return b;
        if (b.empty()) return a;
        std::string s;
        s.reserve(a.size() + b.size());
        s.append(a.view());
        s.append(b.view());
        return Str(std::move(s));
    }

    bool operator==(const Str& o) const { return view() == o.view(); }
    bool operator==(std::string_view v) const { return view() == v; }

    std::string str() const { return std::string(view()); }

  private:
    std::shared_ptr<const std::string> base_;
    std::uint32_t off_ = 0;
    std::uint32_t len_ = 0;
};

} // namespace tvl

#endif
