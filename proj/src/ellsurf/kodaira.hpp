#ifndef ESD_ELLSURF_KODAIRA_HPP
#define ESD_ELLSURF_KODAIRA_HPP

#include <string>

namespace esd {

struct KodairaSymbol {
    enum Kind { I0, In, II, III, IV, I0star, Instar, IIstar, IIIstar, IVstar } kind = I0;
    long n = 0; // for In / Instar

    bool good() const { return kind == I0; }
    bool multiplicative() const { return kind == In; }
    bool additive() const { return !good() && !multiplicative(); }
    bool is_star_even() const { return (kind == I0star) || (kind == Instar && n % 2 == 0); }

    std::string str() const {
        switch (kind) {
            case I0: return "I0";
            case In: return "I" + std::to_string(n);
            case II: return "II";
            case III: return "III";
            case IV: return "IV";
            case I0star: return "I0*";
            case Instar: return "I" + std::to_string(n) + "*";
            case IIstar: return "II*";
            case IIIstar: return "III*";
            case IVstar: return "IV*";
        }
        return "?";
    }

    // order of the geometric component group
    long geom_components() const {
        switch (kind) {
            case I0: return 1;
            case In: return n;
            case II: return 1;
            case III: return 2;
            case IV: return 3;
            case I0star: return 4;
            case Instar: return 4;
            case IIstar: return 1;
            case IIIstar: return 2;
            case IVstar: return 3;
        }
        return 1;
    }

    std::string geom_group() const {
        switch (kind) {
            case I0: case II: case IIstar: return "0";
            case In: return n == 1 ? "0" : "Z/" + std::to_string(n);
            case III: case IIIstar: return "Z/2";
            case IV: case IVstar: return "Z/3";
            case I0star: return "(Z/2)^2";
            case Instar: return n % 2 == 0 ? "(Z/2)^2" : "Z/4";
        }
        return "0";
    }

    bool operator==(const KodairaSymbol& o) const { return kind == o.kind && n == o.n; }
};

// generic-fiber expected v(Delta) for residue characteristic != 2,3
inline long tame_vdelta(const KodairaSymbol& s) {
    switch (s.kind) {
        case KodairaSymbol::I0: return 0;
        case KodairaSymbol::In: return s.n;
        case KodairaSymbol::II: return 2;
        case KodairaSymbol::III: return 3;
        case KodairaSymbol::IV: return 4;
        case KodairaSymbol::I0star: return 6;
        case KodairaSymbol::Instar: return 6 + s.n;
        case KodairaSymbol::IVstar: return 8;
        case KodairaSymbol::IIIstar: return 9;
        case KodairaSymbol::IIstar: return 10;
    }
    return 0;
}

} // namespace esd

#endif
