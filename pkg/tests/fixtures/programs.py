"""Sample programs, hyperproperties and annotations shared by the tests."""

# Integer division by repeated subtraction; the base case needs no return statement.
DIV_SOURCE = """
proc div(n: int, d: int) returns (q: int) {
    if (n < d) {
        q := 0;
    } else {
        q := div(n - d, d);
        q := q + 1;
    }
}
"""

MULT_SOURCE = """
// multiplication by repeated addition
proc mult(x: int, y: int) returns (r: int) {
    if (x <= 0) {
        r := 0;
    } else {
        r := mult(x - 1, y);
        r := r + y;
    }
}
"""

FIB_SOURCE = """
proc fib(n: int) returns (r: int) {
    var a: int;
    var b: int;
    if (n <= 1) {
        r := n;
    } else {
        a := fib(n - 1);
        b := fib(n - 2);
        r := a + b;
    }
}
"""

ACKERMANN_SOURCE = """
proc ack(m: int, n: int) returns (r: int) {
    var t: int;
    if (m == 0) {
        r := n + 1;
    } else {
        if (n == 0) {
            r := ack(m - 1, 1);
        } else {
            t := ack(m, n - 1);
            r := ack(m - 1, t);
        }
    }
}
"""

# f recurses and post-processes its result with the helper h.
HELPER_SOURCE = """
proc f(x: int) returns (y: int) {
    if (x <= 0) {
        y := 0;
    } else {
        y := f(x - 1);
        y := h(y);
    }
}

proc h(z: int) returns (w: int) {
    w := z + 1;
}
"""

# Tail-recursive countdown: nothing runs after the recursive call returns.
COUNTDOWN_SOURCE = """
proc count(n: int) {
    if (n > 0) {
        n := n - 1;
        call count(n);
    }
}
"""

DIV_MONOTONE = """
copies: 2
pre: (and (<= n_1 n_2) (= d_1 d_2) (> d_1 0))
post: (<= q_1 q_2)
"""

DIV_MONOTONE_INLINE = "copies: 2 | pre: (and (<= n_1 n_2) (= d_1 d_2) (> d_1 0)) | post: (<= q_1 q_2)"

# x*y + x'*y == (x + x')*y
MULT_DISTRIBUTIVE = """
copies: 3
pre: (and (= y_1 y_2) (= y_2 y_3) (>= x_1 0) (>= x_2 0) (= x_3 (+ x_1 x_2)))
post: (= r_3 (+ r_1 r_2))
"""

FIB_DETERMINISTIC = """
copies: 2
pre: (= n_1 n_2)
post: (= r_1 r_2)
"""

DIV_DEPENDENT_INCREMENT = {"q := q + 1": "dep"}

COUNTDOWN_DEPENDENT_DECREMENT = {"n := n - 1": "dep"}

# div(2n, d) >= 2 div(n, d): the first copy recurses about twice as often
DIV_SCALING = """
copies: 2
pre: (and (= n_1 (* 2 n_2)) (= d_1 d_2) (> d_1 0))
post: (>= q_1 (* 2 q_2))
"""

DIV_SCALING_REDUCTION = "(2,1)-lockstep(P1, P2)"

# div(n + n', d) >= div(n, d) + div(n', d)
DIV_DISTRIBUTIVE = """
copies: 3
pre: (and (= n_3 (+ n_1 n_2)) (>= n_1 0) (>= n_2 0) (= d_1 d_2) (= d_2 d_3) (> d_1 0))
post: (>= q_3 (+ q_1 q_2))
"""

DIV_DISTRIBUTIVE_REDUCTION = "(1,1)-lockstep(P3, nested_concatenation(P1, P2))"

# f computes a + 1 or a - 1 depending on the branch; main calls it once
TWO_BRANCHES_SOURCE = """
proc main(x: int) returns (y: int) {
    y := f(x);
}

proc f(a: int) returns (b: int) {
    if (a > 0) {
        b := a + 1;
    } else {
        b := a - 1;
    }
}
"""

TWO_BRANCHES_INCREMENT = """
copies: 1
post: (= y_1 (+ x_1 1))
"""
