"""
Cameron-Walker 正則性検証ツール - モジュールパッケージ
"""
