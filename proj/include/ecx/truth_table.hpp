/*!
  \file truth_table.hpp
  \brief Bit-packed complete truth tables

  Index k of a table encodes the assignment where variable i takes bit i
  of k, so variable 0 is the least significant position.
*/

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace ecx
{

/*! \brief Largest number of variables a truth_table may have. */
inline constexpr uint32_t max_table_vars = 20u;

namespace detail
{

/* bit patterns of the first six projections inside one 64-bit word */
inline constexpr uint64_t projections[6] = {
    0xaaaaaaaaaaaaaaaaull, 0xccccccccccccccccull, 0xf0f0f0f0f0f0f0f0ull,
    0xff00ff00ff00ff00ull, 0xffff0000ffff0000ull, 0xffffffff00000000ull };

inline uint64_t word_mask( uint32_t num_vars )
{
  return num_vars >= 6u ? ~uint64_t( 0 ) : ( ( uint64_t( 1 ) << ( uint64_t( 1 ) << num_vars ) ) - 1u );
}

} // namespace detail

class truth_table
{
public:
  /*! \brief The constant-0 function of zero variables. */
  truth_table() : words_( 1u, 0u ) {}

  /*! \brief The constant-0 function of `num_vars` variables. */
  explicit truth_table( uint32_t num_vars ) : num_vars_( num_vars )
  {
    if ( num_vars > max_table_vars )
    {
      throw cap_exceeded( "truth table limited to " + std::to_string( max_table_vars ) + " variables, got " + std::to_string( num_vars ) );
    }
    words_.assign( num_vars <= 6u ? 1u : ( std::size_t( 1 ) << ( num_vars - 6u ) ), 0u );
  }

  template<typename Fn>
  static truth_table from_function( uint32_t num_vars, Fn&& fn )
  {
    truth_table tt( num_vars );
    for ( uint64_t k = 0; k < tt.size(); ++k )
    {
      if ( fn( k ) )
      {
        tt.set( k, true );
      }
    }
    return tt;
  }

  /*! \brief Parses a string of 2^n characters '0'/'1', index 0 first. */
  static truth_table from_string( std::string_view bits )
  {
    if ( bits.empty() || !std::has_single_bit( bits.size() ) )
    {
      throw parse_error( "truth table length must be a power of two, got " + std::to_string( bits.size() ) );
    }
    auto const n = static_cast<uint32_t>( std::countr_zero( bits.size() ) );
    truth_table tt( n );
    for ( std::size_t k = 0; k < bits.size(); ++k )
    {
      if ( bits[k] == '1' )
      {
        tt.set( k, true );
      }
      else if ( bits[k] != '0' )
      {
        throw parse_error( std::string( "invalid truth table character '" ) + bits[k] + "'" );
      }
    }
    return tt;
  }

  std::string to_string() const
  {
    std::string s( size(), '0' );
    for ( uint64_t k = 0; k < size(); ++k )
    {
      if ( get( k ) )
      {
        s[k] = '1';
      }
    }
    return s;
  }

  uint32_t num_vars() const noexcept { return num_vars_; }
  uint64_t size() const noexcept { return uint64_t( 1 ) << num_vars_; }
  std::span<uint64_t const> words() const noexcept { return words_; }
  std::span<uint64_t> words() noexcept { return words_; }

  bool get( uint64_t k ) const noexcept { return ( words_[k >> 6] >> ( k & 63u ) ) & 1u; }
  bool operator[]( uint64_t k ) const noexcept { return get( k ); }

  void set( uint64_t k, bool value ) noexcept
  {
    auto const bit = uint64_t( 1 ) << ( k & 63u );
    if ( value )
    {
      words_[k >> 6] |= bit;
    }
    else
    {
      words_[k >> 6] &= ~bit;
    }
  }

  uint64_t count_ones() const noexcept
  {
    uint64_t c = 0;
    for ( auto w : words_ )
    {
      c += std::popcount( w );
    }
    return c;
  }

  bool is_const0() const noexcept
  {
    return std::all_of( words_.begin(), words_.end(), []( auto w ) { return w == 0u; } );
  }

  bool is_const1() const noexcept
  {
    auto const m = detail::word_mask( num_vars_ );
    return std::all_of( words_.begin(), words_.end(), [m]( auto w ) { return w == m; } );
  }

  bool is_constant() const noexcept { return is_const0() || is_const1(); }

  truth_table operator~() const
  {
    truth_table r = *this;
    auto const m = detail::word_mask( num_vars_ );
    for ( auto& w : r.words_ )
    {
      w = ~w & m;
    }
    return r;
  }

  /*! \brief True iff the function value changes with variable `var` for some assignment. */
  bool depends_on( uint32_t var ) const noexcept
  {
    if ( var >= num_vars_ )
    {
      return false;
    }
    if ( var < 6u )
    {
      auto const shift = 1u << var;
      auto const low = ~detail::projections[var] & detail::word_mask( num_vars_ );
      return std::any_of( words_.begin(), words_.end(), [&]( auto w ) { return ( ( w ^ ( w >> shift ) ) & low ) != 0u; } );
    }
    auto const stride = std::size_t( 1 ) << ( var - 6u );
    for ( std::size_t base = 0; base < words_.size(); base += 2 * stride )
    {
      for ( std::size_t j = 0; j < stride; ++j )
      {
        if ( words_[base + j] != words_[base + stride + j] )
        {
          return true;
        }
      }
    }
    return false;
  }

  /*! \brief The subfunction with `var` fixed to `value`, over the remaining n-1 variables (renumbered down). */
  truth_table cofactor( uint32_t var, bool value ) const
  {
    truth_table r( num_vars_ - 1u );
    if ( var >= 6u )
    {
      auto const stride = std::size_t( 1 ) << ( var - 6u );
      std::size_t out = 0;
      for ( std::size_t base = 0; base < words_.size(); base += 2 * stride )
      {
        for ( std::size_t j = 0; j < stride; ++j )
        {
          r.words_[out++] = words_[base + ( value ? stride : 0u ) + j];
        }
      }
      return r;
    }
    uint64_t const half = size() >> 1;
    uint64_t const low_mask = ( uint64_t( 1 ) << var ) - 1u;
    for ( uint64_t j = 0; j < half; ++j )
    {
      uint64_t const k = ( ( j & ~low_mask ) << 1 ) | ( uint64_t( value ) << var ) | ( j & low_mask );
      if ( get( k ) )
      {
        r.set( j, true );
      }
    }
    return r;
  }

  /*! \brief Same table over the same variables with `var` fixed to `value` (the result no longer depends on `var`). */
  truth_table restrict_var( uint32_t var, bool value ) const
  {
    return truth_table::from_function( num_vars_, [&]( uint64_t k ) {
      auto const bit = uint64_t( 1 ) << var;
      return get( value ? ( k | bit ) : ( k & ~bit ) );
    } );
  }

  friend bool operator==( truth_table const& a, truth_table const& b ) noexcept
  {
    return a.num_vars_ == b.num_vars_ && a.words_ == b.words_;
  }

  std::size_t hash() const noexcept
  {
    std::size_t h = num_vars_ * 0x9e3779b97f4a7c15ull;
    for ( auto w : words_ )
    {
      h ^= std::hash<uint64_t>{}( w ) + 0x9e3779b97f4a7c15ull + ( h << 6 ) + ( h >> 2 );
    }
    return h;
  }

private:
  uint32_t num_vars_ = 0u;
  std::vector<uint64_t> words_;
};

} // namespace ecx

template<>
struct std::hash<ecx::truth_table>
{
  std::size_t operator()( ecx::truth_table const& tt ) const noexcept { return tt.hash(); }
};
