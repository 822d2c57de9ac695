#pragma once

#include "itl/formula.hpp"

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace itl
{

using rational = mpq_class;

// A finite union of intervals of the real line with rational endpoints.
//
// Stored as sorted breakpoints p_0 < ... < p_{k-1}, one membership bit per
// breakpoint, and one membership bit per open gap between consecutive
// breakpoints (k + 1 gaps, the outer two unbounded). The form is canonical
// once every breakpoint whose bit agrees with both neighbouring gaps is
// dropped, so structural equality is set equality.
class interval_set
{
    std::vector< rational > _pts;
    std::vector< bool > _at;  // _at[i]: p_i is a member
    std::vector< bool > _gap; // _gap[i]: (p_{i-1}, p_i) is a member

    void normalize();

public:
    // A finite bound, or an infinite one when `value` is empty.
    struct bound
    {
        std::optional< rational > value;
        bool closed = false;
    };

    interval_set() : _gap{ false } {}
    interval_set( std::vector< rational > pts, std::vector< bool > at, std::vector< bool > gap );

    static interval_set empty() { return {}; }
    static interval_set all();
    static interval_set point( const rational& x );
    // Throws invalid_structure for an empty or ill-formed interval.
    static interval_set interval( const bound& lo, const bound& hi );
    static interval_set open( const rational& lo, const rational& hi );
    static interval_set below( const rational& x, bool closed = false ); // (-inf, x) or (-inf, x]
    static interval_set above( const rational& x, bool closed = false ); // (x, inf) or [x, inf)

    [[nodiscard]] const std::vector< rational >& breakpoints() const { return _pts; }
    [[nodiscard]] const std::vector< bool >& point_bits() const { return _at; }
    [[nodiscard]] const std::vector< bool >& gap_bits() const { return _gap; }

    [[nodiscard]] bool contains( const rational& x ) const;
    [[nodiscard]] bool is_empty() const { return _pts.empty() && !_gap[ 0 ]; }
    [[nodiscard]] bool is_all() const { return _pts.empty() && _gap[ 0 ]; }
    [[nodiscard]] bool is_open() const;
    [[nodiscard]] bool subset_of( const interval_set& o ) const;

    [[nodiscard]] interval_set complement() const;
    [[nodiscard]] interval_set interior() const;
    [[nodiscard]] interval_set closure() const;

    // Image under y = m*x + b with m != 0.
    [[nodiscard]] interval_set affine_image( const rational& m, const rational& b ) const;

    // Maximal connected components as (lower, upper) bound pairs.
    [[nodiscard]] std::vector< std::pair< bound, bound > > components() const;

    // e.g. "(-inf, 0) u [1, 1]"; "empty" for the empty set.
    [[nodiscard]] std::string to_string() const;

    friend interval_set operator|( const interval_set& a, const interval_set& b );
    friend interval_set operator&( const interval_set& a, const interval_set& b );
    friend bool operator==( const interval_set& a, const interval_set& b );
    friend bool operator!=( const interval_set& a, const interval_set& b ) { return !( a == b ); }
};

// x -> a*x + c
struct affine
{
    rational slope;
    rational intercept;

    [[nodiscard]] rational operator()( const rational& x ) const { return slope * x + intercept; }
    friend bool operator==( const affine&, const affine& ) = default;
};

// Continuous piecewise-affine self map of the real line. Piece i covers the
// closed interval [b_{i-1}, b_i] with b_{-1} = -inf and b_k = +inf.
class piecewise_affine_map
{
    std::vector< rational > _breaks;
    std::vector< affine > _pieces;

public:
    explicit piecewise_affine_map( affine f = { 1, 0 } );
    // Throws invalid_structure unless pieces.size() == breaks.size() + 1,
    // breaks increase strictly and adjacent pieces agree at their breakpoint.
    piecewise_affine_map( std::vector< rational > breaks, std::vector< affine > pieces );

    [[nodiscard]] const std::vector< rational >& breakpoints() const { return _breaks; }
    [[nodiscard]] const std::vector< affine >& pieces() const { return _pieces; }
    [[nodiscard]] interval_set piece_domain( std::size_t i ) const;

    [[nodiscard]] rational operator()( const rational& x ) const;

    // Nonzero slopes of one sign: the map is then an interior map.
    [[nodiscard]] bool open() const;

    [[nodiscard]] interval_set preimage( const interval_set& a ) const;
    [[nodiscard]] interval_set image( const interval_set& a ) const;

    // e.g. "piecewise x<=0 : 0 ; x>=0 : 2*x"
    [[nodiscard]] std::string to_string() const;
};

struct real_caps
{
    std::size_t iter = 64;
    std::size_t restart = 8;
    std::size_t orbit = 128;
    std::size_t window = 8;
};

struct real_system
{
    piecewise_affine_map map;
    std::map< std::string, interval_set > val;
    real_caps caps;

    // Throws invalid_structure when a valuation is not an open set.
    void validate() const;
    [[nodiscard]] interval_set operator()( const std::string& atom ) const;
};

enum class real_status
{
    exact,
    extrapolated,
    undetermined,
};

[[nodiscard]] std::string to_string( real_status s );

struct real_node
{
    formula f;
    interval_set value;
    real_status status = real_status::exact;
    std::string reason; // why undetermined, or how a limit was obtained
};

struct eval_outcome
{
    interval_set value;
    real_status status = real_status::exact;
    std::string reason;
    std::vector< real_node > nodes; // one per subformula, children first
};

// Evaluates f on the system. Never throws for semantic reasons; an
// uncertified fixpoint shows up as an undetermined status.
[[nodiscard]] eval_outcome eval_real( const real_system& sys, const formula& f );

// Membership of each point in the extension of f. Throws
// undetermined_extension when the extension could not be certified.
[[nodiscard]] std::vector< bool > check_pointwise( const real_system& sys, const formula& f,
                                                   const std::vector< rational >& points );

// Canonical text of a rational: "3", "-1/2".
[[nodiscard]] std::string to_string( const rational& q );

} // namespace itl
