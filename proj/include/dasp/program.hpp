/*
 *  Copyright 2026 The dasp Authors
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 */

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dasp {

using AtomId = std::uint32_t;

/* Atom 0 is the distinguished falsum. */
inline constexpr AtomId kBottom = 0;

class Literal {
public:
    constexpr Literal() = default;
    constexpr explicit Literal( AtomId atom, bool negative = false )
        : code_( atom * 2 + ( negative ? 1u : 0u ) ) {}

    static constexpr Literal pos( AtomId atom ) { return Literal( atom, false ); }
    static constexpr Literal neg( AtomId atom ) { return Literal( atom, true ); }
    static constexpr Literal from_code( std::uint32_t code ) { Literal l; l.code_ = code; return l; }

    /* Signed wire form: +id or -id. Zero maps to the falsum atom. */
    static Literal from_signed( std::int64_t value );
    std::int64_t to_signed() const { return negative() ? -std::int64_t( atom() ) : std::int64_t( atom() ); }

    constexpr AtomId atom() const { return code_ >> 1; }
    constexpr bool negative() const { return code_ & 1u; }
    constexpr bool positive() const { return !negative(); }
    constexpr std::uint32_t code() const { return code_; }
    constexpr Literal operator~() const { return from_code( code_ ^ 1u ); }

    constexpr auto operator<=>( const Literal& ) const = default;

private:
    std::uint32_t code_ = 0;
};

enum class Value : std::int8_t { False = -1, Undefined = 0, True = 1 };

inline Value negate( Value v ) { return static_cast< Value >( -static_cast< int >( v ) ); }

struct Rule {
    AtomId head = kBottom;
    std::vector< AtomId > pos;
    std::vector< AtomId > neg;

    bool is_constraint() const { return head == kBottom; }
    bool is_fact() const { return head != kBottom && pos.empty() && neg.empty(); }
    bool is_vacuous() const;
    bool operator==( const Rule& ) const = default;
};

class ProgramError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/*
 * A ground normal program over atoms 0..atom_count()-1.
 * Atom names are optional but unique when present.
 */
class GroundProgram {
public:
    GroundProgram();

    AtomId add_atom( std::string name = {} );
    /* Returns the atom with this name, creating it when missing. */
    AtomId atom( std::string_view name );
    std::optional< AtomId > find( std::string_view name ) const;
    void ensure_atom( AtomId id );
    void set_name( AtomId id, std::string name );

    void add_rule( Rule rule );
    void add_rule( AtomId head, std::vector< AtomId > pos, std::vector< AtomId > neg = {} );
    void add_constraint( std::vector< AtomId > pos, std::vector< AtomId > neg = {} ) { add_rule( kBottom, std::move( pos ), std::move( neg ) ); }
    void add_fact( AtomId head ) { add_rule( head, {}, {} ); }

    std::size_t atom_count() const { return names_.size(); }
    const std::string& name( AtomId id ) const { return names_.at( id ); }
    bool has_name( AtomId id ) const { return id < names_.size() && !names_[ id ].empty(); }
    std::span< const Rule > rules() const { return rules_; }
    std::size_t rule_count() const { return rules_.size(); }

    bool operator==( const GroundProgram& other ) const { return names_ == other.names_ && rules_ == other.rules_; }

private:
    std::vector< std::string > names_;
    std::unordered_map< std::string, AtomId > by_name_;
    std::vector< Rule > rules_;
};

/* Partial assignment over the atoms of a program; the falsum is always false. */
class Interpretation {
public:
    Interpretation() = default;
    explicit Interpretation( std::size_t atom_count );
    static Interpretation from_true_atoms( std::size_t atom_count, std::span< const AtomId > true_atoms );

    std::size_t size() const { return values_.size(); }
    Value operator[]( AtomId id ) const { return values_[ id ]; }
    Value value( Literal lit ) const { return lit.negative() ? negate( values_[ lit.atom() ] ) : values_[ lit.atom() ]; }
    void set( AtomId id, Value v );
    bool is_total() const;
    std::vector< AtomId > true_atoms() const;

private:
    std::vector< Value > values_;
};

}  // namespace dasp
