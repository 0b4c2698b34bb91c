#!/usr/bin/env python

#
# 例外の定義
#
# ライブラリ側は例外を投げるだけで、終了コードへの変換はbin/sync_intervals.pyが行う
#


class AlphaCfError(Exception):
    pass


class FieldError(AlphaCfError):
    """体が一致しない、あるいは二段以上の拡大が必要になった"""
    pass


class FieldZeroDivisionError(FieldError, ZeroDivisionError):
    pass


class RootSelectionError(AlphaCfError):
    pass


class NoRootError(RootSelectionError):
    pass


class AmbiguousRootError(RootSelectionError):
    pass


class NegativeDiscriminantError(RootSelectionError):
    pass


class WordError(AlphaCfError):
    """Θ作用素が未定義、アルファベット違反、構成パスがない、など"""
    pass


class DynamicsError(AlphaCfError):
    """極に当たった、lが上限を超えた、閉区間の外に出た"""
    pass


class SyncError(AlphaCfError):
    pass


class UsageError(AlphaCfError):
    """名前付き定数や語の書き方、上限の値などの指定の誤り（終了コード2）"""
    pass
