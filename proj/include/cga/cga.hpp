#pragma once

#include "cga/alphabet.hpp"
#include "cga/automaton.hpp"
#include "cga/closure.hpp"
#include "cga/domino.hpp"
#include "cga/dyck.hpp"
#include "cga/error.hpp"
#include "cga/flower.hpp"
#include "cga/format.hpp"
#include "cga/game.hpp"
#include "cga/grammar.hpp"
#include "cga/seed.hpp"
#include "cga/transducer.hpp"
